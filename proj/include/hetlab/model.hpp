#pragma once

#include <array>
#include <string>
#include <vector>

// Core model layer: the competitive Lotka-Volterra system
//   x_i' = x_i (tau_i - sum_j rho_ij x_j)
// specialized to the five-species rock-scissors-paper-lizard-Spock game,
// its axis equilibria and their eigenvalues, and the existence /
// asymptotic-stability certificates for the heteroclinic network.

namespace hetlab {

// Strict inequalities that control a classification are evaluated with a
// relative tolerance; anything inside the band is reported as marginal so
// region boundaries render as thin bands instead of misclassified pixels.
inline constexpr double boundary_rtol = 1e-9;

enum class tri { no = -1, marginal = 0, yes = 1 };

// Sign of v with a dead band of width rtol*scale around zero.
tri tri_sign(double v, double scale, double rtol = boundary_rtol);

inline bool definite(tri t) { return t != tri::marginal; }

// The four rate parameters of the game.  At each saddle the incoming
// trajectory sees contraction rates -c_A (2-d connection) and -c_B (1-d
// connection) and expansion rates e_A and e_B; the interaction matrix is
// built from them (see rspls_system).
struct GameParameters {
    double c_a = 0.0;
    double c_b = 0.0;
    double e_a = 0.0;
    double e_b = 0.0;

    bool valid() const;
    // 0 < e_B < e_A < min{c_A, c_B} and e_A <= 1: the regime in which the
    // network-level asymptotic stability certificate applies.
    bool as_regime() const;
    tri as_regime_tri() const;
};

struct LVSystem {
    int n = 0;
    std::vector<double> tau;  // growth rates, size n
    std::vector<double> rho;  // interaction matrix, row-major n*n, unit diagonal

    double rho_at(int i, int j) const { return rho[static_cast<size_t>(i) * n + j]; }
    double& rho_at(int i, int j) { return rho[static_cast<size_t>(i) * n + j]; }
};

// n=5, tau=1, rho rows (indices mod 5):
//   rho_{j,j}   = 1,        rho_{j,j+1} = 1 + c_A,  rho_{j,j+2} = 1 - e_B,
//   rho_{j,j+3} = 1 + c_B,  rho_{j,j+4} = 1 - e_A.
// e_A = 1 gives a zero entry and e_A > 1 a negative one; both are accepted.
LVSystem rspls_system(const GameParameters& p);

// x_i' = x_i (tau_i - sum_j rho_ij x_j).  No clamping: callers that need
// orthant invariance handle it themselves.
void vector_field(const LVSystem& sys, const double* x, double* dx);
std::vector<double> vector_field(const LVSystem& sys, const std::vector<double>& x);

// The square-root change of coordinates X_i = sqrt(x_i):
//   X_i' = (X_i/2)(tau_i - sum_j rho_ij X_j^2),
// used only by the invariant-sphere diagnostics (non-radial eigenvalues
// halve, radial becomes -tau_k).
std::vector<double> sqrt_coordinates_field(const LVSystem& sys, const std::vector<double>& X);

// Eigenvalues of the Jacobian at the axis equilibrium xi_k (coordinate k
// equal to tau_k): the radial direction k carries -tau_k and direction j
// carries tau_j - rho_jk tau_k.  Nodes and directions are 0-based.
struct DirectionEigenvalue {
    int direction;
    double lambda;
};
std::vector<DirectionEigenvalue> equilibrium_eigenvalues(const LVSystem& sys, int k);

// Existence of the heteroclinic network: at every node the two outgoing
// directions must expand and the remaining two contract.
struct ExistenceReport {
    struct NodeCheck {
        int node;
        bool expanding_ok;    // min over outgoing directions of eigenvalue > 0
        bool contracting_ok;  // max over transverse directions of eigenvalue < 0
        double expanding_margin;
        double contracting_margin;  // positive when satisfied
    };
    std::vector<NodeCheck> per_node;
    bool network_exists = false;
};
ExistenceReport check_existence(const LVSystem& sys);

// Sufficient conditions for asymptotic stability of the whole network.
// stable_proven=false means "not proven by these conditions", not unstable.
struct NetworkStability {
    bool stable_proven = false;
    // which route certified it: "e_A<1" (strict-competition argument) or
    // "e_A=1" (plane-domination argument inside each Delta-clique)
    std::string via = "none";
    double margin = 0.0;  // smallest slack among the controlling inequalities
    tri regime = tri::no;
};
NetworkStability check_network_asymptotic_stability(const GameParameters& p);

// For e_A = 1 the invariant 3-space of a Delta-clique {xi_j, xi_j+1, xi_j+3}
// contains three planes of equilibria-candidate balance; the middle node's
// plane must dominate the other two on the simplex, which reduces to the
// axis-intercept inequalities 1/(1+c_A) < 1, 1/(1+c_B) < 1, 1/(1-e_B) > 1.
struct PlaneDomination {
    bool dominates = false;
    // axis intercepts of the three planes restricted to the clique
    // coordinates, indexed [plane][axis]; 0 marks "no intercept".
    std::array<std::array<double, 3>, 3> intercepts{};
    std::array<int, 3> clique_nodes{};  // 0-based
};
PlaneDomination delta_clique_plane_check(const GameParameters& p, const std::array<int, 3>& clique);

}  // namespace hetlab
