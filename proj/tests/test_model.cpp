#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hetlab/model.hpp"

using namespace hetlab;

namespace {

std::vector<GameParameters> random_params(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.2, 6.0);
    std::vector<GameParameters> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back({u(rng), u(rng), u(rng), u(rng)});
    return out;
}

// Analytic Jacobian of x_i' = x_i (tau_i - sum_j rho_ij x_j).
Eigen::MatrixXd jacobian(const LVSystem& sys, const std::vector<double>& x) {
    const int n = sys.n;
    Eigen::MatrixXd j(n, n);
    for (int i = 0; i < n; ++i) {
        double s = sys.tau[static_cast<size_t>(i)];
        for (int k = 0; k < n; ++k) s -= sys.rho_at(i, k) * x[static_cast<size_t>(k)];
        for (int c = 0; c < n; ++c)
            j(i, c) = (i == c ? s : 0.0) - x[static_cast<size_t>(i)] * sys.rho_at(i, c);
    }
    return j;
}

std::vector<double> sorted_real_eigs(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> out;
    for (int i = 0; i < m.rows(); ++i) {
        CHECK(std::abs(es.eigenvalues()[i].imag()) < 1e-10);
        out.push_back(es.eigenvalues()[i].real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("interaction matrix rows follow the cyclic pattern") {
    const GameParameters p{2.0, 3.0, 1.0, 0.8};
    const LVSystem sys = rspls_system(p);
    REQUIRE(sys.n == 5);
    CHECK(sys.tau == std::vector<double>(5, 1.0));

    const double row0[5] = {1.0, 3.0, 0.2, 4.0, 0.0};
    for (int k = 0; k < 5; ++k) CHECK(sys.rho_at(0, k) == doctest::Approx(row0[k]).epsilon(1e-15));

    // every row is the same pattern shifted by the row index
    for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k)
            CHECK(sys.rho_at(j, (j + k) % 5) == sys.rho_at(0, k));
}

TEST_CASE("rspls_system rejects non-positive parameters") {
    CHECK_THROWS(rspls_system({0.0, 1.0, 1.0, 0.5}));
    CHECK_THROWS(rspls_system({1.0, -2.0, 1.0, 0.5}));
    CHECK_NOTHROW(rspls_system({1.0, 2.0, 1.5, 0.5}));  // e_A > 1 is a valid system
}

TEST_CASE("vector field values") {
    const GameParameters p{2.0, 3.0, 1.0, 0.8};
    const LVSystem sys = rspls_system(p);

    // on an axis the field reduces to the logistic term
    const std::vector<double> x{0.5, 0.0, 0.0, 0.0, 0.0};
    const auto dx = vector_field(sys, x);
    CHECK(dx[0] == doctest::Approx(0.25).epsilon(1e-15));
    for (int i = 1; i < 5; ++i) CHECK(dx[i] == 0.0);

    // generic point against a direct loop
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> y(5);
        for (auto& v : y) v = u(rng);
        const auto dy = vector_field(sys, y);
        for (int i = 0; i < 5; ++i) {
            double s = 1.0;
            for (int j = 0; j < 5; ++j) s -= sys.rho_at(i, j) * y[static_cast<size_t>(j)];
            CHECK(dy[i] == doctest::Approx(y[static_cast<size_t>(i)] * s).epsilon(1e-14));
        }
    }
    CHECK_THROWS(vector_field(sys, std::vector<double>(4, 0.1)));
}

TEST_CASE("equilibrium eigenvalues are {-1, e_A, -c_B, e_B, -c_A} at every node") {
    for (const GameParameters& p : random_params(40, 101)) {
        const LVSystem sys = rspls_system(p);
        for (int k = 0; k < 5; ++k) {
            const auto eigs = equilibrium_eigenvalues(sys, k);
            REQUIRE(eigs.size() == 5);
            for (int j = 0; j < 5; ++j) CHECK(eigs[static_cast<size_t>(j)].direction == j);
            CHECK(eigs[static_cast<size_t>(k)].lambda == doctest::Approx(-1.0).epsilon(1e-14));
            CHECK(eigs[static_cast<size_t>((k + 1) % 5)].lambda ==
                  doctest::Approx(p.e_a).epsilon(1e-12));
            CHECK(eigs[static_cast<size_t>((k + 2) % 5)].lambda ==
                  doctest::Approx(-p.c_b).epsilon(1e-12));
            CHECK(eigs[static_cast<size_t>((k + 3) % 5)].lambda ==
                  doctest::Approx(p.e_b).epsilon(1e-12));
            CHECK(eigs[static_cast<size_t>((k + 4) % 5)].lambda ==
                  doctest::Approx(-p.c_a).epsilon(1e-12));
        }
    }
    const LVSystem sys = rspls_system({2.0, 3.0, 1.0, 0.8});
    CHECK_THROWS(equilibrium_eigenvalues(sys, 5));
}

TEST_CASE("axis equilibrium eigenvalues match a dense Jacobian solver") {
    for (const GameParameters& p : random_params(25, 202)) {
        const LVSystem sys = rspls_system(p);
        for (int k = 0; k < 5; ++k) {
            std::vector<double> x(5, 0.0);
            x[static_cast<size_t>(k)] = sys.tau[static_cast<size_t>(k)];
            const auto dense = sorted_real_eigs(jacobian(sys, x));
            std::vector<double> ours;
            for (const auto& de : equilibrium_eigenvalues(sys, k)) ours.push_back(de.lambda);
            std::sort(ours.begin(), ours.end());
            for (int i = 0; i < 5; ++i) {
                const double scale = std::max(1.0, std::abs(dense[static_cast<size_t>(i)]));
                CHECK(std::abs(dense[static_cast<size_t>(i)] - ours[static_cast<size_t>(i)]) <=
                      1e-12 * scale);
            }
        }
    }
}

TEST_CASE("square-root coordinates: chain rule and halved transverse spectrum") {
    const GameParameters p{1.2, 4.0, 1.0, 0.8};
    const LVSystem sys = rspls_system(p);

    // x = X^2 maps the sqrt field onto the original one
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> X(5), x(5);
        for (int i = 0; i < 5; ++i) {
            X[static_cast<size_t>(i)] = u(rng);
            x[static_cast<size_t>(i)] = X[static_cast<size_t>(i)] * X[static_cast<size_t>(i)];
        }
        const auto dX = sqrt_coordinates_field(sys, X);
        const auto dx = vector_field(sys, x);
        for (int i = 0; i < 5; ++i)
            CHECK(2.0 * X[static_cast<size_t>(i)] * dX[static_cast<size_t>(i)] ==
                  doctest::Approx(dx[static_cast<size_t>(i)]).epsilon(1e-12));
    }

    // finite-difference Jacobian of the sqrt field at the transformed
    // equilibrium: transverse eigenvalues halve, the radial one stays -tau
    for (int k = 0; k < 5; ++k) {
        std::vector<double> X0(5, 0.0);
        X0[static_cast<size_t>(k)] = std::sqrt(sys.tau[static_cast<size_t>(k)]);
        Eigen::MatrixXd j(5, 5);
        const double h = 1e-6;
        for (int c = 0; c < 5; ++c) {
            auto Xp = X0, Xm = X0;
            Xp[static_cast<size_t>(c)] += h;
            Xm[static_cast<size_t>(c)] -= h;
            const auto fp = sqrt_coordinates_field(sys, Xp);
            const auto fm = sqrt_coordinates_field(sys, Xm);
            for (int r = 0; r < 5; ++r)
                j(r, c) = (fp[static_cast<size_t>(r)] - fm[static_cast<size_t>(r)]) / (2.0 * h);
        }
        auto got = sorted_real_eigs(j);
        std::vector<double> want;
        for (const auto& de : equilibrium_eigenvalues(sys, k))
            want.push_back(de.direction == k ? -sys.tau[static_cast<size_t>(k)] : de.lambda / 2.0);
        std::sort(want.begin(), want.end());
        for (int i = 0; i < 5; ++i)
            CHECK(got[static_cast<size_t>(i)] ==
                  doctest::Approx(want[static_cast<size_t>(i)]).epsilon(1e-5));
    }
}

TEST_CASE("stability regime membership") {
    CHECK(GameParameters{3.0, 2.0, 1.0, 0.8}.as_regime());
    CHECK(GameParameters{3.0, 2.0, 1.0, 0.8}.as_regime_tri() == tri::yes);

    // e_A = 1 is inside the regime, not borderline
    CHECK(GameParameters{1.4, 2.0, 1.0, 0.8}.as_regime_tri() == tri::yes);

    // e_A just above 1 falls in the dead band; clearly above is out
    CHECK(GameParameters{1.2, 4.0, 1.0 + 1e-10, 0.8}.as_regime_tri() == tri::marginal);
    CHECK(GameParameters{1.2, 4.0, 1.1, 0.8}.as_regime_tri() == tri::no);

    // ordering violations
    CHECK(GameParameters{3.0, 2.0, 0.8, 1.0}.as_regime_tri() == tri::no);  // e_B > e_A
    CHECK(GameParameters{0.5, 0.4, 1.0, 0.8}.as_regime_tri() == tri::no);  // min c < e_A
    CHECK_FALSE(GameParameters{0.5, 0.4, 1.0, 0.8}.as_regime());

    // invalid parameters are never in the regime
    CHECK(GameParameters{3.0, 2.0, 1.0, 0.0}.as_regime_tri() == tri::no);
    CHECK_FALSE(GameParameters{3.0, 2.0, 1.0, 0.0}.valid());

    // a strict inequality inside the dead band reports marginal
    const GameParameters close{3.0, 2.0, 1.0, 1.0 - 1e-12};
    CHECK(close.as_regime_tri() == tri::marginal);
}

TEST_CASE("existence of the network holds for every positive parameter set") {
    for (const GameParameters& p : random_params(60, 303)) {
        const ExistenceReport rep = check_existence(rspls_system(p));
        CHECK(rep.network_exists);
        REQUIRE(rep.per_node.size() == 5);
        for (const auto& nc : rep.per_node) {
            CHECK(nc.expanding_ok);
            CHECK(nc.contracting_ok);
            CHECK(nc.expanding_margin == doctest::Approx(std::min(p.e_a, p.e_b)).epsilon(1e-12));
            CHECK(nc.contracting_margin == doctest::Approx(std::min(p.c_a, p.c_b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("network asymptotic stability certificate") {
    SUBCASE("strict competition route for e_A < 1") {
        const NetworkStability ns = check_network_asymptotic_stability({3.0, 2.0, 0.9, 0.8});
        CHECK(ns.stable_proven);
        CHECK(ns.via == "e_A<1");
        CHECK(ns.margin == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(ns.regime == tri::yes);
    }
    SUBCASE("plane domination route at e_A = 1") {
        const NetworkStability ns = check_network_asymptotic_stability({1.4, 2.0, 1.0, 0.8});
        CHECK(ns.stable_proven);
        CHECK(ns.via == "e_A=1");
        CHECK(ns.regime == tri::yes);
    }
    SUBCASE("outside the regime nothing is certified") {
        const NetworkStability ns = check_network_asymptotic_stability({0.5, 0.4, 1.0, 0.8});
        CHECK_FALSE(ns.stable_proven);
        CHECK(ns.via == "none");
        CHECK(ns.regime == tri::no);
    }
    SUBCASE("e_A above 1 is not certified even with large c") {
        const NetworkStability ns = check_network_asymptotic_stability({4.0, 5.0, 1.5, 0.8});
        CHECK_FALSE(ns.stable_proven);
    }
}

TEST_CASE("delta-clique plane domination at e_A = 1") {
    const GameParameters p{1.4, 2.0, 1.0, 0.8};
    const PlaneDomination pd = delta_clique_plane_check(p, {0, 1, 3});
    CHECK(pd.dominates);
    CHECK(pd.clique_nodes == std::array<int, 3>{0, 1, 3});

    // middle plane: no intercept on the source axis, x_{j+1} = 1, x_{j+3} = 1/(1-e_B)
    CHECK(pd.intercepts[1][0] == 0.0);
    CHECK(pd.intercepts[1][1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pd.intercepts[1][2] == doctest::Approx(5.0).epsilon(1e-12));

    CHECK(pd.intercepts[0][0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pd.intercepts[0][1] == doctest::Approx(1.0 / 2.4).epsilon(1e-12));
    CHECK(pd.intercepts[0][2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // all five cliques work the same way
    for (int j = 0; j < 5; ++j)
        CHECK(delta_clique_plane_check(p, {j, (j + 1) % 5, (j + 3) % 5}).dominates);

    CHECK_THROWS(delta_clique_plane_check({1.4, 2.0, 0.9, 0.8}, {0, 1, 3}));  // e_A != 1
    CHECK_THROWS(delta_clique_plane_check(p, {0, 1, 2}));                     // not a clique
}

TEST_CASE("tri_sign dead band") {
    CHECK(tri_sign(1.0, 1.0) == tri::yes);
    CHECK(tri_sign(-1.0, 1.0) == tri::no);
    CHECK(tri_sign(1e-12, 1.0) == tri::marginal);
    CHECK(tri_sign(-1e-12, 1.0) == tri::marginal);
    // the band scales with the expression magnitude
    CHECK(tri_sign(1e-6, 1e2) == tri::yes);
    CHECK(tri_sign(1e-6, 1e4) == tri::marginal);
    CHECK(definite(tri::yes));
    CHECK_FALSE(definite(tri::marginal));
}
