#pragma once

// Direct numerical integration of the game dynamics and the trajectory-level
// cross-checks of the analytic classification: tube-of-initial-conditions
// shadowing studies around a chosen cycle and the network attraction test.
//
// Numerical setting that matters here: dwell times near the saddles grow
// geometrically, and double precision reaches the absorption floor (1e-250)
// after roughly 575 e-folds, so a trajectory can complete only a handful of
// laps before a coordinate underflows.  The shadowing rules below are
// calibrated to that budget: two full laps are demanded where they are
// affordable (3- and 4-node cycles) and an absorbed trajectory ending on
// pattern certifies a 5-node cycle.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hetlab/model.hpp"
#include "hetlab/network.hpp"

namespace hetlab {

using Point5 = std::array<double, 5>;
using Arc = std::vector<Point5>;

struct IntegrateOptions {
    double t_max = 1e4;
    double rtol = 1e-10;
    double atol = 1e-14;
    double max_step = 0.5;         // see default_max_step
    double absorb_floor = 1e-250;  // stop once min_i x_i falls below this
};

// Step cap that keeps the stepper from hopping across a saddle passage in a
// few huge steps and flipping the sign of a deeply-contracted coordinate:
// 1.5 / (1 + max(c_A, c_B)).
double default_max_step(const GameParameters& p);

struct Trajectory {
    std::vector<double> t;
    std::vector<Point5> x;
    bool absorbed = false;        // hit the absorption floor (or left the orthant)
    bool step_underflow = false;  // controlled stepper stalled; result truncated
};

Trajectory integrate(const LVSystem& sys, const Point5& x0, const IntegrateOptions& opt);

// One merged stay inside the eta-ball of an axis equilibrium.
struct Visit {
    int node = -1;  // xi index
    double entry = 0.0;
    double dwell = 0.0;
};

std::vector<Visit> extract_itinerary(const Trajectory& traj, double eta = 0.05);

// The ten heteroclinic connection arcs, integrated inside their invariant
// faces and resampled to equal chord length.
class ArcSet {
  public:
    const Arc& at(int from, int to) const;  // throws on a non-edge
    std::vector<const Arc*> all() const;
    std::vector<const Arc*> cycle_arcs(const CycleSpec& cycle) const;

    std::array<Arc, 10> arcs;  // A-edges j->j+1 at [j], B-edges j->j+3 at [5+j]
};

ArcSet build_connection_arcs(const GameParameters& p, int npts = 64, double eps = 1e-6);

double dist_to_polyline(const Point5& x, const Arc& arc);
double dist_to_arcs(const Point5& x, const std::vector<const Arc*>& arcs);

// Initial conditions in a radius-delta tube around the cycle's arcs:
// length-weighted arc choice, uniform arc-length position, uniform offset in
// the 4-d normal disc (radius delta * u^(1/4)), folded into the open orthant.
// Sample i depends only on (seed, i), so any parallel schedule reproduces
// the same set.
std::vector<Point5> tube_samples(const ArcSet& arcs, const CycleSpec& cycle, int n,
                                 double delta, std::uint64_t seed);

// Attribution of one trajectory to the cycle instance it shadows.
struct ShadowResult {
    bool qualified = false;       // some cycle instance passed the lap rules
    CycleFamily family = CycleFamily::RockToPaper;
    int rotation = 0;
    std::vector<int> nodes;       // winning instance, xi indices
    int run = 0;                  // longest on-pattern visit run of the winner
    int laps = 0;                 // (run - 1) / m
    int start = 0;                // visit index where the run begins
    bool absorbed_certified = false;  // qualified via the absorbed-end rule
    bool stay_ok = false;         // stayed within delta of the winner's arcs
    double stay_dmax = 0.0;       // 0 when the stay window is empty
};

// Longest consecutive run of the visit sequence along any phase of the
// pattern; returns (run, start index, whether the run ends at the final
// visit).
struct RunInfo {
    int run = 0;
    int start = -1;
    bool at_end = false;
};
RunInfo longest_pattern_run(const std::vector<int>& seq, const std::vector<int>& pattern);

ShadowResult classify_shadowing(const std::vector<Visit>& visits, const Trajectory& traj,
                                const ArcSet& arcs, double delta);

struct TubeStudy {
    GameParameters params;
    CycleSpec cycle;
    int n = 0;
    double delta = 0.05;
    double eta = 0.05;
    std::uint64_t seed = 1;
    std::vector<ShadowResult> per_sample;
    std::map<std::string, int> wins;       // stay-check passed, by family name
    std::map<std::string, int> stay_fail;  // qualified but drifted off the arcs
    int none = 0;                          // no qualified instance
    int attracted = 0;                     // sum of wins
    int sampled_rotation = 0;              // wins matching the sampled instance
    double fraction(const std::string& family) const;
};

TubeStudy tube_study(const GameParameters& p, const CycleSpec& cycle, int n,
                     double delta = 0.05, double eta = 0.05, std::uint64_t seed = 1);

struct NetworkAttraction {
    GameParameters params;
    int n = 0;
    int approached = 0;  // final distance to the arc set < tol
    double tol = 0.01;
    std::vector<double> final_distances;
    double fraction() const { return n ? static_cast<double>(approached) / n : 0.0; }
};

// Interior initial conditions (uniform in [0, 1.2]^5, kept when within 0.3
// of the arc set) integrated to t_max; counts how many end up within tol of
// the network.
NetworkAttraction network_attraction_test(const GameParameters& p, int n,
                                          std::uint64_t seed = 3, double tol = 0.01);

}  // namespace hetlab
