#pragma once

#include <array>
#include <string>
#include <vector>

#include "hetlab/model.hpp"
#include "hetlab/network.hpp"

// Cross-section transition matrices.  Near each node of a cycle the passage
// from the incoming section to the next incoming section is approximated by
// a 3x3 basic matrix acting on logarithmic transverse coordinates; products
// of basic matrices around the cycle drive the stability-index machinery.

namespace hetlab {

struct Mat3 {
    std::array<double, 9> a{};

    double at(int r, int c) const { return a[static_cast<size_t>(3 * r + c)]; }
    double& at(int r, int c) { return a[static_cast<size_t>(3 * r + c)]; }
    std::array<double, 3> row(int r) const { return {at(r, 0), at(r, 1), at(r, 2)}; }
};

Mat3 operator*(const Mat3& lhs, const Mat3& rhs);

// A transition matrix between incoming cross-sections of two cycle nodes.
// from_node/to_node are xi indices and guard against composing mismatched
// sections; label follows the established naming for these products
// ("M_2", "(M_2)^3", "M_(2,1)", "Mh^(1)", ...).
struct TransitionMatrix {
    Mat3 m;
    std::string label;
    int from_node = -1;
    int to_node = -1;
};

// Composition with section checking: applies `next` after `acc`.
TransitionMatrix compose(const TransitionMatrix& next, const TransitionMatrix& acc);

// The four basic matrices, selected by the (incoming, outgoing) connection
// types at a node:  (B,A) -> M_1,  (A,A) -> M_2,  (A,B) -> M_3,  (B,B) -> M_4.
// The four-node cycle's matrices are the same objects under different
// names: Mhat_1 = M_1, Mhat_2 = M_3, Mhat_3 = Mhat_5 = M_4.
enum class BasicKind { M1, M2, M3, M4, Mhat1, Mhat2, Mhat3, Mhat5 };

TransitionMatrix basic_matrix(BasicKind kind, const GameParameters& p);

// Basic matrix implied by a cycle position: in/out connection types at
// cycle.nodes[pos], with sections filled in.
TransitionMatrix step_matrix(const CycleSpec& cycle, int pos, const GameParameters& p);

// Accumulated products around the cycle from start position j:
//   S_j,  S_{j+1} S_j,  ...,  full turn M^(j)
// (m entries).  Labels follow the per-family conventions.
std::vector<TransitionMatrix> product_chain(const CycleSpec& cycle, int j, const GameParameters& p);

// Closed-form product evaluated from its explicit rational entries rather
// than by multiplication; the label list covers every accumulated product
// of the four cycles.  Three printed sources of these tables carry
// single-entry misprints; the closed forms here are the oracle-corrected
// ones, and `verify` reports the deviations explicitly.
TransitionMatrix closed_form_product(const std::string& label, const GameParameters& p);
std::vector<std::string> closed_form_labels();

// All rows of all accumulated products for start j, the candidate vectors
// for the index minimum.  Rows without a negative entry evaluate to +inf
// under the index function and are retained.
std::vector<std::array<double, 3>> index_rows(const CycleSpec& cycle, int j, const GameParameters& p);

}  // namespace hetlab
