#pragma once

#include <array>
#include <string>
#include <vector>

// Topology of the five-node network: two node labelings, the ten directed
// connections (each node sends a 2-dimensional "A" connection to its
// successor and a 1-dimensional "B" connection three steps ahead), the five
// Delta-cliques, and the four elementary cycle families.

namespace hetlab {

enum class ConnType { A, B };  // A: 2-d connection j -> j+1; B: 1-d, j -> j+3

// The xi-labeling indexes equilibria by coordinate axis; the o-labeling is
// the game-move ordering.  Fixed correspondence:
//   o 0,1,2,3,4  <->  xi 0,3,1,4,2   (both 0-based)
struct NodeId {
    int xi = 0;  // 0..4
    int o = 0;   // 0..4
};

NodeId node_from_xi(int xi);
NodeId node_from_o(int o);

enum class CycleFamily { RockToPaper, Star, RSP, FourNode };

std::string cycle_family_name(CycleFamily f);

struct CycleSpec {
    CycleFamily family;
    int rotation = 0;             // 0..4; 0 is the canonical representative
    std::vector<int> nodes;       // xi indices, in visit order
    std::vector<ConnType> conns;  // conns[i] joins nodes[i] -> nodes[(i+1)%m]

    int size() const { return static_cast<int>(nodes.size()); }
    std::string name() const;
};

// Edge type of the network connection a -> b; throws if not an edge.
ConnType edge_type(int a, int b);
bool is_network_edge(int a, int b);

// Canonical cycles (xi indices):
//   RockToPaper: 0 1 2 3 4   (AAAAA)  -- the five 2-d connections
//   Star:        0 3 1 4 2   (BBBBB)  -- the five 1-d connections
//   RSP:         0 1 2       (AAB)
//   FourNode:    0 1 4 2     (ABBB)
CycleSpec canonical_cycle(CycleFamily f);
CycleSpec rotated_cycle(CycleFamily f, int rotation);

// The four canonical cycles plus the five rotations each of RSP and
// FourNode (the five-fold families); 12 specs total.  The two 5-node
// cycles are invariant under rotation so only rotation 0 is listed.
std::vector<CycleSpec> elementary_cycles();

// Delta-clique at j: source xi_j, short (2-d) target xi_{j+1}, reached also
// via the long route xi_j -> xi_{j+3} -> xi_{j+1}.
struct DeltaClique {
    int source;
    int short_target;
    int long_mid;
};
std::vector<DeltaClique> delta_cliques();

}  // namespace hetlab
