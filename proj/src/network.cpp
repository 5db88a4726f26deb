#include "hetlab/network.hpp"

#include <stdexcept>

namespace hetlab {

namespace {
// o-index of each xi-index and vice versa (both 0-based): o {0,1,2,3,4}
// corresponds to xi {0,3,1,4,2}.
constexpr int xi_of_o[5] = {0, 3, 1, 4, 2};
constexpr int o_of_xi[5] = {0, 2, 4, 1, 3};
}  // namespace

NodeId node_from_xi(int xi) {
    if (xi < 0 || xi > 4) throw std::runtime_error("node_from_xi: index out of range");
    return {xi, o_of_xi[xi]};
}

NodeId node_from_o(int o) {
    if (o < 0 || o > 4) throw std::runtime_error("node_from_o: index out of range");
    return {xi_of_o[o], o};
}

std::string cycle_family_name(CycleFamily f) {
    switch (f) {
        case CycleFamily::RockToPaper: return "rock-to-paper";
        case CycleFamily::Star: return "star";
        case CycleFamily::RSP: return "rsp";
        case CycleFamily::FourNode: return "four-node";
    }
    return "?";
}

std::string CycleSpec::name() const {
    std::string s = cycle_family_name(family);
    if (rotation != 0) s += "+" + std::to_string(rotation);
    return s;
}

bool is_network_edge(int a, int b) {
    const int d = ((b - a) % 5 + 5) % 5;
    return d == 1 || d == 3;
}

ConnType edge_type(int a, int b) {
    const int d = ((b - a) % 5 + 5) % 5;
    if (d == 1) return ConnType::A;
    if (d == 3) return ConnType::B;
    throw std::runtime_error("edge_type: " + std::to_string(a) + " -> " + std::to_string(b) +
                             " is not a network connection");
}

CycleSpec canonical_cycle(CycleFamily f) { return rotated_cycle(f, 0); }

CycleSpec rotated_cycle(CycleFamily f, int rotation) {
    if (rotation < 0 || rotation > 4) throw std::runtime_error("rotated_cycle: rotation out of range");
    CycleSpec c;
    c.family = f;
    c.rotation = rotation;
    std::vector<int> base;
    switch (f) {
        case CycleFamily::RockToPaper: base = {0, 1, 2, 3, 4}; break;
        case CycleFamily::Star: base = {0, 3, 1, 4, 2}; break;
        case CycleFamily::RSP: base = {0, 1, 2}; break;
        case CycleFamily::FourNode: base = {0, 1, 4, 2}; break;
    }
    for (int v : base) c.nodes.push_back((v + rotation) % 5);
    for (size_t i = 0; i < c.nodes.size(); ++i)
        c.conns.push_back(edge_type(c.nodes[i], c.nodes[(i + 1) % c.nodes.size()]));
    return c;
}

std::vector<CycleSpec> elementary_cycles() {
    std::vector<CycleSpec> out;
    out.push_back(canonical_cycle(CycleFamily::RockToPaper));
    out.push_back(canonical_cycle(CycleFamily::Star));
    for (int r = 0; r < 5; ++r) out.push_back(rotated_cycle(CycleFamily::RSP, r));
    for (int r = 0; r < 5; ++r) out.push_back(rotated_cycle(CycleFamily::FourNode, r));
    return out;
}

std::vector<DeltaClique> delta_cliques() {
    std::vector<DeltaClique> out;
    for (int j = 0; j < 5; ++j) out.push_back({j, (j + 1) % 5, (j + 3) % 5});
    return out;
}

}  // namespace hetlab
