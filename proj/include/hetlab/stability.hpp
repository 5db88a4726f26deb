#pragma once

// Stability classification of the elementary heteroclinic cycles.
//
// Two independent routes produce the same answers and are cross-checked in the
// tests:
//   * stability_indices_generic    -- walks the transition-matrix chains and
//                                     applies the spectral criteria numerically,
//   * stability_indices_closed_form -- evaluates the per-cycle closed-form
//                                     conditions and index formulas.
//
// The local stability index along a connection is computed with the function
// f_index below; a cycle is classified e.a.s. (all indices positive), f.a.s.
// (all indices finite or +inf, some possibly negative), or c.u. (all indices
// -inf).  Borderline parameter values are reported as Marginal rather than
// silently rounded to one side.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "hetlab/model.hpp"
#include "hetlab/network.hpp"
#include "hetlab/transition.hpp"

namespace hetlab {

// Constants that appear throughout the closed-form transition matrices.
struct DerivedConstants {
    double delta_t;  // c_A^2 c_B / (e_A^2 e_B), the leading eigenvalue of the RSP full turns
    double alpha_t;
    double beta_t;
    double gamma_t;
    double theta_t;
    double mu_t;
    double nu_t;
};

DerivedConstants derived_constants(const GameParameters& p);

// The index function: given the exponent vector of a leading term, returns the
// local stability index contribution in [-inf, +inf].
//   min >= 0          -> +inf
//   max <= 0          -> -inf
//   sum == 0          -> 0
//   max > 0, sum < 0  -> sum / max
//   min < 0, sum > 0  -> -sum / min
double f_index(const std::array<double, 3>& alpha);

// Spectral data of a full-turn product, with the three usability conditions:
//   (i)   the eigenvalue of largest modulus is real,
//   (ii)  it exceeds 1,
//   (iii) its eigenvector can be scaled to have all components of one sign.
struct SpectralData {
    std::array<std::complex<double>, 3> lambdas;
    double lambda_max = 0.0;             // the dominant eigenvalue when cond_i holds
    std::array<double, 3> w_max{};       // right eigenvector, largest component = +1
    std::array<double, 3> v_max{};       // left eigenvector, largest component = +1
    tri cond_i = tri::marginal;
    tri cond_ii = tri::marginal;
    tri cond_iii = tri::marginal;
    bool left_nonnegative = false;       // v_max >= 0 (up to 1e-12): certifies that a
                                         // failing turn forces all indices to -inf
    bool defective = false;              // eigenvector could not be isolated
};

SpectralData spectral_check(const Mat3& m);

enum class Classification {
    CompletelyUnstable,   // c.u.: every index -inf, no positive-measure basin
    FragmentarilyStable,  // f.a.s.: attracts positive measure, indices finite
    EssentiallyStable,    // e.a.s.: all indices positive
    Marginal,             // a controlling inequality sits inside the dead band
    Unsupported,
};

std::string classification_name(Classification c);

// Index along one connection of a cycle.  The connection is identified by the
// node it leads into; the chain of transition matrices starts there.
struct StabilityIndex {
    int from_node = -1;  // 0-based xi index
    int to_node = -1;
    double value = 0.0;  // may be +-inf
};

struct ConditionResult {
    std::string name;
    tri state = tri::marginal;
};

struct StabilityReport {
    CycleSpec cycle;
    std::string method;  // "generic" or "closed-form"
    Classification classification = Classification::Marginal;
    std::vector<StabilityIndex> indices;
    std::vector<ConditionResult> conditions;
    std::vector<std::string> warnings;
    bool minus_infinity_certified = false;  // see SpectralData::left_nonnegative
};

// Determinant-style conditions for the two five-node cycles, phrased directly
// in the parameters.  For the rock-to-paper cycle the entries of the repeating
// matrix are (a1,a2,a3) = (c_A/e_A, c_B/e_A, -e_B/e_A) and the conditions read
//   a1 + a2 + a3 > 1,   a1 + a2 a3 > 0,   a1 a2^3 + a3^3 > 0;
// for the star cycle the roles of (c_A,e_A) and (c_B,e_B) swap.
struct VietaConditions {
    tri sum_exceeds_one = tri::marginal;   // c_A + c_B > e_A + e_B
    tri pair_product = tri::marginal;      // c_A e_A > c_B e_B   (star: c_B e_B > c_A e_A)
    tri cubic_product = tri::marginal;     // c_A c_B^3 > e_A e_B^3 (star: c_A^3 e_B > c_B e_A^3)
};

VietaConditions vieta_conditions(CycleFamily family, const GameParameters& p);

// Generic classification: builds the transition-matrix chains for every start
// node, applies spectral_check to the full turns, and takes minima of f_index
// over all accumulated rows.
StabilityReport stability_indices_generic(const CycleSpec& cycle, const GameParameters& p);

// Closed-form classification.  Exact piecewise indices for the RSP cycle;
// condition-based classification plus exact index values for the two
// five-node cycles; condition-based classification with index upper bounds
// for the four-node cycle.
StabilityReport stability_indices_closed_form(const CycleSpec& cycle, const GameParameters& p);

// True when the two reports agree: same classification and, where both carry
// finite index values for the same connection, values within tol.  A Marginal
// classification on either side counts as agreement.
bool reports_agree(const StabilityReport& generic, const StabilityReport& closed,
                   double tol = 1e-9);

// Classification of all four cycle families restricted to the asymptotic
// stability regime 0 < e_B < e_A <= min{c_A, c_B, 1}; parameters outside the
// regime yield Unsupported for every family.
struct RegimeClassification {
    bool in_regime = false;
    std::array<Classification, 4> by_family{};  // indexed by CycleFamily
};

RegimeClassification classify_in_as_regime(const GameParameters& p);

// Cross-cycle exclusion facts checked at a parameter point.
struct ExclusionClaim {
    std::string name;
    bool holds = true;
    std::string detail;
};

std::vector<ExclusionClaim> mutual_exclusion_check(const GameParameters& p);

// Sign relations between the derived constants and the parameters; each claim
// is an implication and is reported as holding when its premise is false.
std::vector<ExclusionClaim> lemma_relations_check(const GameParameters& p);

}  // namespace hetlab
