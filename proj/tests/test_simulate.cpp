#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetlab/simulate.hpp"

using namespace hetlab;

namespace {

IntegrateOptions tight_options(const GameParameters& p, double t_max) {
    IntegrateOptions opt;
    opt.t_max = t_max;
    opt.max_step = default_max_step(p);
    return opt;
}

}  // namespace

TEST_CASE("default step cap") {
    CHECK(default_max_step({3.0, 2.0, 1.0, 0.8}) == doctest::Approx(1.5 / 4.0));
    CHECK(default_max_step({1.2, 4.0, 1.0, 0.8}) == doctest::Approx(1.5 / 5.0));
}

TEST_CASE("axis equilibria are fixed points of the integrator") {
    const GameParameters p{3.0, 2.0, 1.0, 0.8};
    const LVSystem sys = rspls_system(p);
    const Point5 x0 = {1.0, 0.0, 0.0, 0.0, 0.0};
    const Trajectory traj = integrate(sys, x0, tight_options(p, 50.0));
    REQUIRE(!traj.x.empty());
    CHECK_FALSE(traj.absorbed);  // coordinates that start at zero are off-support
    const Point5& xf = traj.x.back();
    CHECK(xf[0] == doctest::Approx(1.0).epsilon(1e-8));
    for (int i = 1; i < 5; ++i) CHECK(xf[static_cast<size_t>(i)] == 0.0);
}

TEST_CASE("coordinate hyperplanes are invariant bitwise") {
    const GameParameters p{1.2, 4.0, 1.0, 0.8};
    const LVSystem sys = rspls_system(p);
    const Point5 x0 = {0.5, 0.2, 0.1, 0.0, 0.3};
    const Trajectory traj = integrate(sys, x0, tight_options(p, 100.0));
    REQUIRE(traj.x.size() > 10);
    for (const Point5& x : traj.x) CHECK(x[3] == 0.0);
}

TEST_CASE("trajectories stay finite and bounded") {
    const GameParameters p{1.2, 4.0, 1.0, 0.8};
    const LVSystem sys = rspls_system(p);
    const Point5 x0 = {0.31, 0.27, 0.24, 0.22, 0.26};
    const Trajectory traj = integrate(sys, x0, tight_options(p, 200.0));
    REQUIRE(traj.x.size() > 10);
    for (const Point5& x : traj.x)
        for (double v : x) {
            CHECK(std::isfinite(v));
            CHECK(v >= 0.0);
            CHECK(v <= 10.0);
        }
    // output spacing respects the step cap
    for (size_t i = 1; i < traj.t.size(); ++i)
        CHECK(traj.t[i] - traj.t[i - 1] <= default_max_step(p) * 1.000001);
}

TEST_CASE("connection arcs: endpoints, lookup, and per-cycle selection") {
    const GameParameters p{3.0, 2.0, 1.0, 0.8};
    const ArcSet arcs = build_connection_arcs(p);
    CHECK(arcs.all().size() == 10);
    CHECK(arcs.cycle_arcs(canonical_cycle(CycleFamily::RockToPaper)).size() == 5);
    CHECK(arcs.cycle_arcs(canonical_cycle(CycleFamily::Star)).size() == 5);
    CHECK(arcs.cycle_arcs(canonical_cycle(CycleFamily::RSP)).size() == 3);
    CHECK(arcs.cycle_arcs(canonical_cycle(CycleFamily::FourNode)).size() == 4);

    const Arc& a01 = arcs.at(0, 1);
    REQUIRE(a01.size() >= 2);
    CHECK(a01.front()[0] == doctest::Approx(1.0).epsilon(0.05));  // leaves xi_0
    CHECK(a01.back()[1] == doctest::Approx(1.0).epsilon(0.05));   // lands on xi_1
    const Arc& b03 = arcs.at(0, 3);
    CHECK(b03.back()[3] == doctest::Approx(1.0).epsilon(0.05));
    CHECK_THROWS(arcs.at(0, 2));  // not a network edge
    CHECK_THROWS(arcs.at(0, 0));

    // a point on the arc has distance ~0; a far point does not
    CHECK(dist_to_polyline(a01[a01.size() / 2], a01) <= 1e-12);
    const Point5 far = {3.0, 3.0, 3.0, 3.0, 3.0};
    CHECK(dist_to_polyline(far, a01) > 1.0);
}

TEST_CASE("tube samples are reproducible, positive, and near the cycle") {
    const GameParameters p{3.0, 2.0, 1.0, 0.8};
    const ArcSet arcs = build_connection_arcs(p);
    const CycleSpec cyc = canonical_cycle(CycleFamily::RockToPaper);
    const double delta = 0.05;
    const auto s1 = tube_samples(arcs, cyc, 40, delta, 99);
    const auto s2 = tube_samples(arcs, cyc, 40, delta, 99);
    const auto s3 = tube_samples(arcs, cyc, 40, delta, 100);
    REQUIRE(s1.size() == 40);
    CHECK(s1 == s2);   // same seed: bitwise identical
    CHECK(s1 != s3);   // different seed: different draws
    const auto cycle_only = arcs.cycle_arcs(cyc);
    for (const Point5& x : s1) {
        for (double v : x) CHECK(v > 0.0);
        CHECK(dist_to_arcs(x, cycle_only) <= delta * 1.5);
    }
}

TEST_CASE("longest pattern run") {
    RunInfo r = longest_pattern_run({0, 1, 2, 0, 1, 2, 0}, {0, 1, 2});
    CHECK(r.run == 7);
    CHECK(r.start == 0);
    CHECK(r.at_end);

    r = longest_pattern_run({3, 0, 1, 2, 4}, {0, 1, 2});
    CHECK(r.run == 3);
    CHECK(r.start == 1);
    CHECK_FALSE(r.at_end);

    // a run may start at any phase of the pattern
    r = longest_pattern_run({1, 2, 0, 1}, {0, 1, 2});
    CHECK(r.run == 4);
    CHECK(r.start == 0);
    CHECK(r.at_end);

    r = longest_pattern_run({}, {0, 1, 2});
    CHECK(r.run == 0);

    r = longest_pattern_run({0, 3, 0, 1}, {0, 1, 2});
    CHECK(r.run == 2);
    CHECK(r.start == 2);
}

TEST_CASE("itineraries near the attracting five-node cycle walk network edges") {
    const GameParameters p{3.0, 2.0, 1.0, 0.8};
    const LVSystem sys = rspls_system(p);
    const ArcSet arcs = build_connection_arcs(p);
    const CycleSpec cyc = canonical_cycle(CycleFamily::RockToPaper);
    const auto samples = tube_samples(arcs, cyc, 6, 0.05, 5);
    int with_visits = 0;
    for (const Point5& x0 : samples) {
        const Trajectory traj = integrate(sys, x0, tight_options(p, 3000.0));
        const auto visits = extract_itinerary(traj);
        if (visits.size() < 2) continue;
        ++with_visits;
        for (size_t i = 1; i < visits.size(); ++i) {
            if (visits[i - 1].node == visits[i].node) continue;
            CAPTURE(visits[i - 1].node);
            CAPTURE(visits[i].node);
            CHECK(is_network_edge(visits[i - 1].node, visits[i].node));
        }
    }
    CHECK(with_visits >= 4);
}

TEST_CASE("dwell times grow along an attracting cycle") {
    const GameParameters p{1.2, 4.0, 1.0, 0.8};  // rsp attracting here
    const LVSystem sys = rspls_system(p);
    const ArcSet arcs = build_connection_arcs(p);
    const CycleSpec cyc = canonical_cycle(CycleFamily::RSP);
    const auto samples = tube_samples(arcs, cyc, 4, 0.05, 17);
    int grew = 0;
    for (const Point5& x0 : samples) {
        const Trajectory traj = integrate(sys, x0, tight_options(p, 3000.0));
        const auto visits = extract_itinerary(traj);
        if (visits.size() < 4) continue;
        if (visits.back().dwell > visits.front().dwell) ++grew;
    }
    CHECK(grew >= 3);
}

TEST_CASE("tube study attributes the rock-to-paper tube to the right cycle") {
    const GameParameters p{3.0, 2.0, 1.0, 0.8};
    const TubeStudy s1 = tube_study(p, canonical_cycle(CycleFamily::RockToPaper), 8, 0.05, 0.05, 42);
    const TubeStudy s2 = tube_study(p, canonical_cycle(CycleFamily::RockToPaper), 8, 0.05, 0.05, 42);
    CHECK(s1.wins == s2.wins);  // deterministic for a fixed seed
    CHECK(s1.attracted == s2.attracted);
    CHECK(s1.n == 8);
    CHECK(s1.fraction("rock-to-paper") >= 0.75);
    int wins_total = 0;
    for (const auto& [name, cnt] : s1.wins) wins_total += cnt;
    CHECK(wins_total == s1.attracted);
    REQUIRE(s1.per_sample.size() == 8);
    for (const ShadowResult& r : s1.per_sample)
        if (r.qualified && r.stay_ok) CHECK(r.run >= 1);
}

TEST_CASE("interior initial conditions approach the full network") {
    const GameParameters p{1.4, 2.0, 1.0, 0.8};  // e_A = 1: plane-domination regime
    const NetworkAttraction na = network_attraction_test(p, 10, 3);
    CHECK(na.n == 10);
    CHECK(na.approached == 10);
    CHECK(na.fraction() == doctest::Approx(1.0));
    REQUIRE(na.final_distances.size() == 10);
    for (double d : na.final_distances) CHECK(d < na.tol);
}
