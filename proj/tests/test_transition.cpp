#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hetlab/network.hpp"
#include "hetlab/transition.hpp"

using namespace hetlab;

namespace {

std::vector<GameParameters> random_params(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.2, 6.0);
    std::vector<GameParameters> out;
    for (int i = 0; i < n; ++i) out.push_back({u(rng), u(rng), u(rng), u(rng)});
    return out;
}

double max_abs(const Mat3& m) {
    double s = 0.0;
    for (double v : m.a) s = std::max(s, std::abs(v));
    return s;
}

double rel_diff(const Mat3& a, const Mat3& b) {
    const double scale = std::max({1.0, max_abs(a), max_abs(b)});
    double d = 0.0;
    for (int i = 0; i < 9; ++i)
        d = std::max(d, std::abs(a.a[static_cast<size_t>(i)] - b.a[static_cast<size_t>(i)]));
    return d / scale;
}

// chain front labels that name a closed form under a different spelling
std::string closed_label_for(const std::string& chain_label) {
    if (chain_label == "M_2") return "(M_2)^1";
    if (chain_label == "M_4") return "(M_4)^1";
    return chain_label;
}

const std::vector<CycleSpec>& four_families() {
    static const std::vector<CycleSpec> fams = {
        canonical_cycle(CycleFamily::RockToPaper), canonical_cycle(CycleFamily::Star),
        canonical_cycle(CycleFamily::RSP), canonical_cycle(CycleFamily::FourNode)};
    return fams;
}

}  // namespace

TEST_CASE("basic matrices at a reference point") {
    const GameParameters p{3.0, 2.0, 1.0, 0.8};

    const TransitionMatrix m2 = basic_matrix(BasicKind::M2, p);
    CHECK(m2.label == "M_2");
    const double want_m2[9] = {2.0, 0, 1, 3.0, 0, 0, -0.8, 1, 0};
    for (int i = 0; i < 9; ++i)
        CHECK(m2.m.a[static_cast<size_t>(i)] == doctest::Approx(want_m2[i]).epsilon(1e-14));

    const TransitionMatrix m3 = basic_matrix(BasicKind::M3, p);
    const double want_m3[9] = {0, 3.75, 0, 1, -1.25, 0, 0, 2.5, 1};
    for (int i = 0; i < 9; ++i)
        CHECK(m3.m.a[static_cast<size_t>(i)] == doctest::Approx(want_m3[i]).epsilon(1e-14));

    // hat matrices reuse the same entries under their own names
    const TransitionMatrix mh2 = basic_matrix(BasicKind::Mhat2, p);
    CHECK(mh2.label == "Mh_2");
    CHECK(rel_diff(mh2.m, m3.m) == 0.0);

    const TransitionMatrix m4 = basic_matrix(BasicKind::M4, p);
    const TransitionMatrix mh3 = basic_matrix(BasicKind::Mhat3, p);
    const TransitionMatrix mh5 = basic_matrix(BasicKind::Mhat5, p);
    CHECK(mh3.label == "Mh_3");
    CHECK(mh5.label == "Mh_5");
    CHECK(rel_diff(m4.m, mh3.m) == 0.0);
    CHECK(rel_diff(m4.m, mh5.m) == 0.0);

    const TransitionMatrix m1 = basic_matrix(BasicKind::M1, p);
    const TransitionMatrix mh1 = basic_matrix(BasicKind::Mhat1, p);
    CHECK(m1.label == "M_1");
    CHECK(mh1.label == "Mh_1");
    CHECK(rel_diff(m1.m, mh1.m) == 0.0);

    CHECK_THROWS(basic_matrix(BasicKind::M2, {0.0, 2.0, 1.0, 0.8}));
}

TEST_CASE("step matrices pick the basic kind from the in/out connection types") {
    const GameParameters p{1.7, 2.9, 0.9, 0.4};

    // rock-to-paper: A in, A out everywhere
    const CycleSpec r2p = canonical_cycle(CycleFamily::RockToPaper);
    const Mat3 m2 = basic_matrix(BasicKind::M2, p).m;
    for (int pos = 0; pos < 5; ++pos) {
        const TransitionMatrix t = step_matrix(r2p, pos, p);
        CHECK(t.label == "M_2");
        CHECK(rel_diff(t.m, m2) == 0.0);
        CHECK(t.from_node == r2p.nodes[static_cast<size_t>(pos)]);
        CHECK(t.to_node == r2p.nodes[static_cast<size_t>((pos + 1) % 5)]);
    }

    // star: B in, B out
    const CycleSpec star = canonical_cycle(CycleFamily::Star);
    const Mat3 m4 = basic_matrix(BasicKind::M4, p).m;
    for (int pos = 0; pos < 5; ++pos) {
        const TransitionMatrix t = step_matrix(star, pos, p);
        CHECK(t.label == "M_4");
        CHECK(rel_diff(t.m, m4) == 0.0);
    }

    // rsp nodes 0,1,2: (B,A) -> M_1, (A,A) -> M_2, (A,B) -> M_3
    const CycleSpec rsp = canonical_cycle(CycleFamily::RSP);
    CHECK(step_matrix(rsp, 0, p).label == "M_1");
    CHECK(step_matrix(rsp, 1, p).label == "M_2");
    CHECK(step_matrix(rsp, 2, p).label == "M_3");
    CHECK(rel_diff(step_matrix(rsp, 0, p).m, basic_matrix(BasicKind::M1, p).m) == 0.0);
    CHECK(rel_diff(step_matrix(rsp, 2, p).m, basic_matrix(BasicKind::M3, p).m) == 0.0);

    // four-node nodes 0,1,4,2: (B,A), (A,B), (B,B), (B,B) with hat names
    const CycleSpec four = canonical_cycle(CycleFamily::FourNode);
    CHECK(step_matrix(four, 0, p).label == "Mh_1");
    CHECK(step_matrix(four, 1, p).label == "Mh_2");
    CHECK(step_matrix(four, 2, p).label == "Mh_5");
    CHECK(step_matrix(four, 3, p).label == "Mh_3");
    CHECK(rel_diff(step_matrix(four, 1, p).m, basic_matrix(BasicKind::M3, p).m) == 0.0);
    CHECK(rel_diff(step_matrix(four, 2, p).m, basic_matrix(BasicKind::M4, p).m) == 0.0);

    CHECK_THROWS(step_matrix(rsp, 3, p));
}

TEST_CASE("product chains thread sections and carry the table labels") {
    const GameParameters p{1.2, 4.0, 1.0, 0.8};

    auto labels = [&](const CycleSpec& c, int j) {
        std::vector<std::string> out;
        for (const auto& t : product_chain(c, j, p)) out.push_back(t.label);
        return out;
    };

    CHECK(labels(canonical_cycle(CycleFamily::RockToPaper), 0) ==
          std::vector<std::string>{"M_2", "(M_2)^2", "(M_2)^3", "(M_2)^4", "(M_2)^5"});
    CHECK(labels(canonical_cycle(CycleFamily::Star), 2) ==
          std::vector<std::string>{"M_4", "(M_4)^2", "(M_4)^3", "(M_4)^4", "(M_4)^5"});

    CHECK(labels(canonical_cycle(CycleFamily::RSP), 0) ==
          std::vector<std::string>{"M_1", "M_(2,1)", "M^(1)"});
    CHECK(labels(canonical_cycle(CycleFamily::RSP), 1) ==
          std::vector<std::string>{"M_2", "M_(3,2)", "M^(2)"});
    CHECK(labels(canonical_cycle(CycleFamily::RSP), 2) ==
          std::vector<std::string>{"M_3", "M_(1,3)", "M^(3)"});

    CHECK(labels(canonical_cycle(CycleFamily::FourNode), 0) ==
          std::vector<std::string>{"Mh_1", "Mh_(2,1)", "Mh_(5,1)", "Mh^(1)"});
    CHECK(labels(canonical_cycle(CycleFamily::FourNode), 1) ==
          std::vector<std::string>{"Mh_2", "Mh_(5,2)", "Mh_(3,2)", "Mh^(2)"});
    CHECK(labels(canonical_cycle(CycleFamily::FourNode), 2) ==
          std::vector<std::string>{"Mh_5", "Mh_(3,5)", "Mh_(1,5)", "Mh^(5)"});
    CHECK(labels(canonical_cycle(CycleFamily::FourNode), 3) ==
          std::vector<std::string>{"Mh_3", "Mh_(1,3)", "Mh_(2,3)", "Mh^(3)"});

    // section bookkeeping: every chain runs from its start node back to it
    for (const CycleSpec& c : four_families()) {
        for (int j = 0; j < c.size(); ++j) {
            const auto chain = product_chain(c, j, p);
            REQUIRE(static_cast<int>(chain.size()) == c.size());
            const int start = c.nodes[static_cast<size_t>(j)];
            for (const auto& t : chain) CHECK(t.from_node == start);
            CHECK(chain.back().to_node == start);
        }
    }

    // composing across mismatched sections throws
    const auto rsp = canonical_cycle(CycleFamily::RSP);
    const TransitionMatrix s0 = step_matrix(rsp, 0, p);  // 0 -> 1
    const TransitionMatrix s2 = step_matrix(rsp, 2, p);  // 2 -> 0
    CHECK_THROWS(compose(s2, s0));
    CHECK_NOTHROW(compose(step_matrix(rsp, 1, p), s0));
}

TEST_CASE("closed forms match the multiplication oracle on random draws") {
    const auto closed = closed_form_labels();
    REQUIRE(closed.size() == 28);

    std::set<std::string> covered;
    double worst = 0.0;
    for (const GameParameters& p : random_params(200, 404)) {
        std::map<std::string, Mat3> products;
        for (const CycleSpec& c : four_families())
            for (int j = 0; j < c.size(); ++j)
                for (const auto& t : product_chain(c, j, p))
                    products[closed_label_for(t.label)] = t.m;

        for (const std::string& label : closed) {
            auto it = products.find(label);
            REQUIRE_MESSAGE(it != products.end(), "no chain produces ", label);
            covered.insert(label);
            const Mat3 cf = closed_form_product(label, p).m;
            worst = std::max(worst, rel_diff(cf, it->second));
        }
    }
    CHECK(covered.size() == 28);
    CHECK(worst <= 1e-10);

    CHECK_THROWS(closed_form_product("M_99", {1, 1, 1, 1}));
}

TEST_CASE("the three corrected table entries") {
    // reference point c_A=3, c_B=2, e_A=1, e_B=0.8
    const GameParameters p{3.0, 2.0, 1.0, 0.8};

    // fifth power of the repeating matrix, row 3 column 2 (1-based)
    const Mat3 p5 = closed_form_product("(M_2)^5", p).m;
    CHECK(p5.at(2, 1) == doctest::Approx(3.44).epsilon(1e-12));
    const double p5_printed = -5.36;  // c_A in place of e_B in the leading term
    CHECK(std::abs(p5.at(2, 1) - p5_printed) > 1.0);

    const Mat3 h52 = closed_form_product("Mh_(5,2)", p).m;
    CHECK(h52.at(2, 1) == doctest::Approx(-3.125).epsilon(1e-12));
    CHECK(std::abs(h52.at(2, 1) - 3.125) > 1.0);  // sign flip in the printed entry

    const Mat3 h32 = closed_form_product("Mh_(3,2)", p).m;
    CHECK(h32.at(0, 0) == doctest::Approx(-2.1875).epsilon(1e-12));
    CHECK(std::abs(h32.at(0, 0) - (-0.9375)) > 1.0);  // c_A in place of c_B

    // and the multiplication oracle agrees with the corrected values
    const auto r2p_chain = product_chain(canonical_cycle(CycleFamily::RockToPaper), 0, p);
    CHECK(r2p_chain.back().m.at(2, 1) == doctest::Approx(3.44).epsilon(1e-12));
    const auto four_chain = product_chain(canonical_cycle(CycleFamily::FourNode), 1, p);
    CHECK(four_chain[1].m.at(2, 1) == doctest::Approx(-3.125).epsilon(1e-12));
    CHECK(four_chain[2].m.at(0, 0) == doctest::Approx(-2.1875).epsilon(1e-12));
}

TEST_CASE("rsp full turns have spectrum {delta_T, 1, 1}") {
    for (const GameParameters& p : random_params(50, 505)) {
        const double dT = p.c_a * p.c_a * p.c_b / (p.e_a * p.e_a * p.e_b);
        for (int j = 0; j < 3; ++j) {
            const Mat3 m = product_chain(canonical_cycle(CycleFamily::RSP), j, p).back().m;
            Eigen::Matrix3d em;
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) em(r, c) = m.at(r, c);
            Eigen::EigenSolver<Eigen::Matrix3d> es(em);
            std::vector<double> lam;
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(es.eigenvalues()[i].imag()) <= 1e-8 * std::max(1.0, dT));
                lam.push_back(es.eigenvalues()[i].real());
            }
            std::sort(lam.begin(), lam.end());
            const std::vector<double> want = dT >= 1.0 ? std::vector<double>{1.0, 1.0, dT}
                                                       : std::vector<double>{dT, 1.0, 1.0};
            for (int i = 0; i < 3; ++i)
                CHECK(lam[static_cast<size_t>(i)] ==
                      doctest::Approx(want[static_cast<size_t>(i)])
                          .epsilon(1e-7 * std::max(1.0, dT)));
        }
    }
}

TEST_CASE("four-node full turns are similar: equal characteristic polynomials") {
    auto charpoly = [](const Mat3& m) {
        const double trc = m.at(0, 0) + m.at(1, 1) + m.at(2, 2);
        const double m2 = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0) +
                          m.at(0, 0) * m.at(2, 2) - m.at(0, 2) * m.at(2, 0) +
                          m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1);
        const double det = m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
                           m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
                           m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
        return std::array<double, 3>{trc, m2, det};
    };

    for (const GameParameters& p : random_params(50, 606)) {
        const CycleSpec four = canonical_cycle(CycleFamily::FourNode);
        const auto ref = charpoly(product_chain(four, 0, p).back().m);
        for (int j = 1; j < 4; ++j) {
            const auto cp = charpoly(product_chain(four, j, p).back().m);
            for (int i = 0; i < 3; ++i) {
                const double scale = std::max(1.0, std::abs(ref[static_cast<size_t>(i)]));
                CHECK(std::abs(cp[static_cast<size_t>(i)] - ref[static_cast<size_t>(i)]) <=
                      1e-10 * scale);
            }
        }
        // one eigenvalue is exactly 1; the other two multiply to
        // c_B^3 c_A / (e_B^3 e_A)
        const double det2 = p.c_b * p.c_b * p.c_b * p.c_a / (p.e_b * p.e_b * p.e_b * p.e_a);
        const double det_full = ref[2];
        CHECK(det_full == doctest::Approx(det2).epsilon(1e-9));
        // char poly at 1 vanishes: 1 - trc + m2 - det = 0
        CHECK(std::abs(1.0 - ref[0] + ref[1] - ref[2]) <=
              1e-9 * std::max({1.0, std::abs(ref[0]), std::abs(ref[1]), std::abs(ref[2])}));
    }
}

TEST_CASE("index rows collect every row of every accumulated product") {
    const GameParameters p{1.2, 4.0, 1.0, 0.8};
    for (const CycleSpec& c : four_families()) {
        const auto rows = index_rows(c, 0, p);
        CHECK(static_cast<int>(rows.size()) == 3 * c.size());
        const auto chain = product_chain(c, 0, p);
        for (int e = 0; e < c.size(); ++e)
            for (int r = 0; r < 3; ++r)
                CHECK(rows[static_cast<size_t>(3 * e + r)] ==
                      chain[static_cast<size_t>(e)].m.row(r));
    }
}

TEST_CASE("matrix product helper multiplies correctly") {
    Mat3 a, b;
    a.a = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    b.a = {9, 8, 7, 6, 5, 4, 3, 2, 1};
    const Mat3 c = a * b;
    CHECK(c.at(0, 0) == 30);  // 1*9 + 2*6 + 3*3
    CHECK(c.at(0, 1) == 24);
    CHECK(c.at(2, 2) == 90);  // 7*7 + 8*4 + 9*1 = 49+32+9
}
