#include "hetlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetlab {

tri tri_sign(double v, double scale, double rtol) {
    const double band = rtol * std::max(scale, 1.0);
    if (v > band) return tri::yes;
    if (v < -band) return tri::no;
    return tri::marginal;
}

bool GameParameters::valid() const {
    return c_a > 0.0 && c_b > 0.0 && e_a > 0.0 && e_b > 0.0;
}

bool GameParameters::as_regime() const {
    return valid() && e_b < e_a && e_a < std::min(c_a, c_b) && e_a <= 1.0;
}

tri GameParameters::as_regime_tri() const {
    if (!valid()) return tri::no;
    const double scale = std::max({c_a, c_b, e_a, e_b});
    // e_A <= 1 is non-strict, so e_A == 1 is cleanly inside the regime;
    // only values above 1 can be "no" or borderline.
    tri worst = e_a <= 1.0 ? tri::yes : tri_sign(1.0 - e_a, scale);
    for (tri t : {tri_sign(e_b, scale), tri_sign(e_a - e_b, scale),
                  tri_sign(std::min(c_a, c_b) - e_a, scale)})
        worst = std::min(worst, t);
    return worst;
}

LVSystem rspls_system(const GameParameters& p) {
    if (!p.valid()) throw std::runtime_error("rspls_system: parameters must be strictly positive");
    LVSystem sys;
    sys.n = 5;
    sys.tau.assign(5, 1.0);
    sys.rho.assign(25, 0.0);
    const double off[5] = {1.0, 1.0 + p.c_a, 1.0 - p.e_b, 1.0 + p.c_b, 1.0 - p.e_a};
    for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) sys.rho_at(j, (j + k) % 5) = off[k];
    return sys;
}

void vector_field(const LVSystem& sys, const double* x, double* dx) {
    const int n = sys.n;
    for (int i = 0; i < n; ++i) {
        double s = sys.tau[i];
        const double* row = &sys.rho[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; ++j) s -= row[j] * x[j];
        dx[i] = x[i] * s;
    }
}

std::vector<double> vector_field(const LVSystem& sys, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != sys.n)
        throw std::runtime_error("vector_field: state dimension mismatch");
    std::vector<double> dx(x.size());
    vector_field(sys, x.data(), dx.data());
    return dx;
}

std::vector<double> sqrt_coordinates_field(const LVSystem& sys, const std::vector<double>& X) {
    if (static_cast<int>(X.size()) != sys.n)
        throw std::runtime_error("sqrt_coordinates_field: state dimension mismatch");
    std::vector<double> dX(X.size());
    for (int i = 0; i < sys.n; ++i) {
        double s = sys.tau[i];
        for (int j = 0; j < sys.n; ++j) s -= sys.rho_at(i, j) * X[j] * X[j];
        dX[i] = 0.5 * X[i] * s;
    }
    return dX;
}

std::vector<DirectionEigenvalue> equilibrium_eigenvalues(const LVSystem& sys, int k) {
    if (k < 0 || k >= sys.n) throw std::runtime_error("equilibrium_eigenvalues: node out of range");
    std::vector<DirectionEigenvalue> out;
    out.reserve(sys.n);
    for (int j = 0; j < sys.n; ++j) {
        const double lam = (j == k) ? -sys.tau[k] : sys.tau[j] - sys.rho_at(j, k) * sys.tau[k];
        out.push_back({j, lam});
    }
    return out;
}

ExistenceReport check_existence(const LVSystem& sys) {
    if (sys.n != 5) throw std::runtime_error("check_existence: requires the five-species system");
    ExistenceReport rep;
    rep.network_exists = true;
    for (int k = 0; k < 5; ++k) {
        const auto eigs = equilibrium_eigenvalues(sys, k);
        // Outgoing connections at xi_k lead to xi_{k+1} and xi_{k+3}.
        const double exp_margin =
            std::min(eigs[(k + 1) % 5].lambda, eigs[(k + 3) % 5].lambda);
        const double con_margin =
            -std::max(eigs[(k + 2) % 5].lambda, eigs[(k + 4) % 5].lambda);
        ExistenceReport::NodeCheck nc;
        nc.node = k;
        nc.expanding_margin = exp_margin;
        nc.contracting_margin = con_margin;
        nc.expanding_ok = exp_margin > 0.0;
        nc.contracting_ok = con_margin > 0.0;
        rep.network_exists = rep.network_exists && nc.expanding_ok && nc.contracting_ok;
        rep.per_node.push_back(nc);
    }
    return rep;
}

NetworkStability check_network_asymptotic_stability(const GameParameters& p) {
    NetworkStability ns;
    ns.regime = p.as_regime_tri();
    if (!p.valid()) return ns;
    const double scale = std::max({p.c_a, p.c_b, p.e_a, p.e_b});
    const double hyp_margin =
        std::min({p.e_b, p.e_a - p.e_b, std::min(p.c_a, p.c_b) - p.e_a, 1.0 - p.e_a});
    if (!(p.e_b > 0.0 && p.e_a > p.e_b && p.e_a < std::min(p.c_a, p.c_b) && p.e_a <= 1.0))
        return ns;
    if (p.e_a < 1.0 && definite(tri_sign(1.0 - p.e_a, scale))) {
        // Strictly competitive case: max{e_A,e_B} < min{c_A,c_B} certifies
        // the network as an attracting heteroclinic object directly.
        ns.stable_proven = true;
        ns.via = "e_A<1";
        ns.margin = std::min(hyp_margin, std::min(p.c_a, p.c_b) - std::max(p.e_a, p.e_b));
        return ns;
    }
    // e_A = 1 (within tolerance): certify via plane domination inside the
    // Delta-cliques; the intercept inequalities hold for all valid params.
    GameParameters q = p;
    q.e_a = 1.0;
    const auto pd = delta_clique_plane_check(q, {0, 1, 3});
    if (pd.dominates) {
        ns.stable_proven = true;
        ns.via = "e_A=1";
        ns.margin = hyp_margin;
    }
    return ns;
}

PlaneDomination delta_clique_plane_check(const GameParameters& p, const std::array<int, 3>& clique) {
    if (std::abs(p.e_a - 1.0) > boundary_rtol)
        throw std::runtime_error("delta_clique_plane_check: argument applies to e_A = 1 only");
    const int j = clique[0];
    if (clique[1] != (j + 1) % 5 || clique[2] != (j + 3) % 5)
        throw std::runtime_error("delta_clique_plane_check: not a Delta-clique triple");
    PlaneDomination pd;
    pd.clique_nodes = clique;
    // Restricted to coordinates (x_j, x_{j+1}, x_{j+3}) the balance plane of
    // each clique node has axis intercepts (0 where the plane misses the
    // axis because the corresponding rho entry vanishes at e_A = 1):
    //   P_j:     x_j = 1,            x_{j+1} = 1/(1+c_A), x_{j+3} = 1/(1+c_B)
    //   P_{j+1}: none on x_j,        x_{j+1} = 1,         x_{j+3} = 1/(1-e_B)
    //   P_{j+3}: x_j = 1/(1-e_B),    x_{j+1} = 1/(1+c_B), x_{j+3} = 1
    pd.intercepts[0] = {1.0, 1.0 / (1.0 + p.c_a), 1.0 / (1.0 + p.c_b)};
    pd.intercepts[1] = {0.0, 1.0, 1.0 / (1.0 - p.e_b)};
    pd.intercepts[2] = {1.0 / (1.0 - p.e_b), 1.0 / (1.0 + p.c_b), 1.0};
    // The middle plane dominates iff 1/(1+c_A) < 1, 1/(1+c_B) < 1 and
    // 1/(1-e_B) > 1, which holds whenever c_A, c_B > 0 and 0 < e_B < 1.
    pd.dominates = p.c_a > 0.0 && p.c_b > 0.0 && p.e_b > 0.0 && p.e_b < 1.0;
    return pd;
}

}  // namespace hetlab
