#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "hetlab/network.hpp"

using namespace hetlab;

TEST_CASE("node labelings correspond as o {0..4} <-> xi {0,3,1,4,2}") {
    const int xi_of_o[5] = {0, 3, 1, 4, 2};
    for (int o = 0; o < 5; ++o) {
        const NodeId n = node_from_o(o);
        CHECK(n.o == o);
        CHECK(n.xi == xi_of_o[o]);
        const NodeId back = node_from_xi(n.xi);
        CHECK(back.o == o);
    }
    CHECK_THROWS(node_from_o(5));
    CHECK_THROWS(node_from_xi(-1));
}

TEST_CASE("edges are exactly the +1 and +3 steps") {
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            const int d = ((b - a) % 5 + 5) % 5;
            CHECK(is_network_edge(a, b) == (d == 1 || d == 3));
            if (d == 1) CHECK(edge_type(a, b) == ConnType::A);
            else if (d == 3) CHECK(edge_type(a, b) == ConnType::B);
            else CHECK_THROWS(edge_type(a, b));
        }
    }
}

TEST_CASE("canonical cycles have the expected nodes and connection types") {
    const CycleSpec r2p = canonical_cycle(CycleFamily::RockToPaper);
    CHECK(r2p.nodes == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(r2p.conns == std::vector<ConnType>(5, ConnType::A));
    CHECK(r2p.name() == "rock-to-paper");

    const CycleSpec star = canonical_cycle(CycleFamily::Star);
    CHECK(star.nodes == std::vector<int>{0, 3, 1, 4, 2});
    CHECK(star.conns == std::vector<ConnType>(5, ConnType::B));
    CHECK(star.name() == "star");

    const CycleSpec rsp = canonical_cycle(CycleFamily::RSP);
    CHECK(rsp.nodes == std::vector<int>{0, 1, 2});
    CHECK(rsp.conns == std::vector<ConnType>{ConnType::A, ConnType::A, ConnType::B});
    CHECK(rsp.name() == "rsp");

    const CycleSpec four = canonical_cycle(CycleFamily::FourNode);
    CHECK(four.nodes == std::vector<int>{0, 1, 4, 2});
    CHECK(four.conns ==
          std::vector<ConnType>{ConnType::A, ConnType::B, ConnType::B, ConnType::B});
    CHECK(four.name() == "four-node");
}

TEST_CASE("rotations shift nodes mod 5 and preserve the connection pattern") {
    for (const CycleFamily f :
         {CycleFamily::RockToPaper, CycleFamily::Star, CycleFamily::RSP, CycleFamily::FourNode}) {
        const CycleSpec base = canonical_cycle(f);
        for (int r = 0; r < 5; ++r) {
            const CycleSpec c = rotated_cycle(f, r);
            CHECK(c.family == f);
            CHECK(c.rotation == r);
            REQUIRE(c.size() == base.size());
            for (int i = 0; i < base.size(); ++i) {
                CHECK(c.nodes[static_cast<size_t>(i)] ==
                      (base.nodes[static_cast<size_t>(i)] + r) % 5);
                CHECK(c.conns[static_cast<size_t>(i)] == base.conns[static_cast<size_t>(i)]);
            }
            // every consecutive pair really is a network edge of the right type
            for (int i = 0; i < c.size(); ++i) {
                const int a = c.nodes[static_cast<size_t>(i)];
                const int b = c.nodes[static_cast<size_t>((i + 1) % c.size())];
                CHECK(edge_type(a, b) == c.conns[static_cast<size_t>(i)]);
            }
        }
    }
    CHECK(rotated_cycle(CycleFamily::RSP, 2).name() == "rsp+2");
    CHECK(rotated_cycle(CycleFamily::FourNode, 4).name() == "four-node+4");
    CHECK_THROWS(rotated_cycle(CycleFamily::RSP, 5));
}

TEST_CASE("the network carries 12 elementary cycles") {
    const auto cycles = elementary_cycles();
    REQUIRE(cycles.size() == 12);

    int n5 = 0, n3 = 0, n4 = 0;
    std::set<std::vector<int>> node_sets;
    for (const auto& c : cycles) {
        node_sets.insert(c.nodes);
        if (c.family == CycleFamily::RockToPaper || c.family == CycleFamily::Star) {
            ++n5;
            CHECK(c.rotation == 0);
        } else if (c.family == CycleFamily::RSP) {
            ++n3;
        } else {
            ++n4;
        }
    }
    CHECK(n5 == 2);
    CHECK(n3 == 5);
    CHECK(n4 == 5);
    CHECK(node_sets.size() == 12);  // all distinct as node sequences
}

TEST_CASE("delta cliques list source, short target, and long-route midpoint") {
    const auto cliques = delta_cliques();
    REQUIRE(cliques.size() == 5);
    for (int j = 0; j < 5; ++j) {
        CHECK(cliques[static_cast<size_t>(j)].source == j);
        CHECK(cliques[static_cast<size_t>(j)].short_target == (j + 1) % 5);
        CHECK(cliques[static_cast<size_t>(j)].long_mid == (j + 3) % 5);
        // both routes of the clique are edges
        CHECK(edge_type(j, (j + 1) % 5) == ConnType::A);
        CHECK(edge_type(j, (j + 3) % 5) == ConnType::B);
        CHECK(edge_type((j + 3) % 5, (j + 1) % 5) == ConnType::B);
    }
}

TEST_CASE("family names") {
    CHECK(cycle_family_name(CycleFamily::RockToPaper) == "rock-to-paper");
    CHECK(cycle_family_name(CycleFamily::Star) == "star");
    CHECK(cycle_family_name(CycleFamily::RSP) == "rsp");
    CHECK(cycle_family_name(CycleFamily::FourNode) == "four-node");
}
