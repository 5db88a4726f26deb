#pragma once
// Parameter-plane sweeps: classify every pixel of a (c_A, c_B) grid at fixed
// (e_A, e_B) with both stability pipelines and render the resulting region
// map as CSV and as a plain pixmap.
//
// Pixel codes (also the palette order in write_sweep_pixmap):
//   0  all four cycles completely unstable
//   1  rock-to-paper cycle f.a.s.
//   2  rock-to-paper cycle e.a.s.
//   3  star cycle attracting
//   4  rock-scissors-paper cycle attracting
//   5  four-node cycle attracting
//   6  some classification is Marginal (a boundary inequality inside the
//      dead band)
//   7  the generic and closed-form pipelines disagree, or two cycles claim
//      to attract at once; either is an internal-consistency failure worth
//      making visible on the map
//
// Precedence when several apply: 7 > 6 > attracting-family code > 0.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hetlab/model.hpp"
#include "hetlab/stability.hpp"

namespace hetlab {

struct SweepConfig {
    int nx = 512;
    int ny = 512;
    double ca_lo = 0.9;
    double ca_hi = 5.0;
    double cb_lo = 0.9;
    double cb_hi = 5.0;
    double e_a = 1.0;
    double e_b = 0.8;

    bool valid() const;
};

// Pixel centers.  Column 0 is the low-c_A edge; row 0 is the TOP of the
// image, i.e. the high-c_B edge, so the pixmap renders with c_B increasing
// upward as on a conventional plot.
double ca_at(const SweepConfig& cfg, int col);
double cb_at(const SweepConfig& cfg, int row);

// Full classification of one parameter point, both pipelines, all four
// cycle families (indexed by CycleFamily).
struct PixelClass {
    std::uint8_t code = 0;
    double sigma = 0.0;  // min generic index of the attracting cycle; NaN if none
    std::array<Classification, 4> generic_class{};
    std::array<Classification, 4> closed_class{};
    bool conflict = false;             // some family: pipelines disagree
    bool exclusion_violation = false;  // two families attracting at once
};

PixelClass classify_pixel(const GameParameters& p);

struct SweepResult {
    SweepConfig config;
    std::vector<std::uint8_t> codes;  // ny*nx, row-major from row 0
    std::vector<double> sigmas;

    std::uint8_t code_at(int row, int col) const { return codes[std::size_t(row) * config.nx + col]; }
    double sigma_at(int row, int col) const { return sigmas[std::size_t(row) * config.nx + col]; }
};

// Serial reference kernel and the OpenMP row-parallel kernel.  Both write
// each pixel into its slot of a preallocated slab, so the output is bitwise
// identical regardless of thread count.  run_sweep dispatches on jobs.
SweepResult run_sweep_serial(const SweepConfig& cfg);
SweepResult run_sweep_parallel(const SweepConfig& cfg, int jobs);
SweepResult run_sweep(const SweepConfig& cfg, int jobs = 0);  // 0: use OpenMP default

// CSV with header c_a,c_b,code,sigma; one line per pixel in row-major order
// (row 0 first).  Values are written with %.17g so doubles round-trip.
void write_sweep_csv(const std::string& path, const SweepResult& res);

struct SweepRow {
    double c_a = 0.0;
    double c_b = 0.0;
    int code = 0;
    double sigma = 0.0;
};

std::vector<SweepRow> read_sweep_csv(const std::string& path);

// Plain (ASCII) pixmap with the fixed 8-color palette from palette().
void write_sweep_pixmap(const std::string& path, const SweepResult& res);
std::vector<std::uint8_t> read_pixmap_codes(const std::string& path,
                                            int* nx = nullptr, int* ny = nullptr);
const std::array<std::array<int, 3>, 8>& palette();

// Flat key=value configuration file ('#' starts a comment, blank lines
// ignored).  Keys mirror the CLI flag names so a sweep config can be
// archived next to its outputs.  Unknown keys are preserved for the caller
// to reject or ignore.
std::map<std::string, std::string> read_key_value_config(const std::string& path);

// Tally used by the exhaustive exclusion scan: counts pixels violating the
// cross-cycle exclusion facts and pixels where every cycle is c.u.
struct ExclusionScan {
    long five_node_violations = 0;   // rock-to-paper and star both attracting
    long small_cycle_violations = 0; // rsp and four-node both attracting
    long regime_violations = 0;      // in-regime pixel with two attractors
    long all_unstable = 0;           // all four cycles c.u.
    long pixels = 0;
};

ExclusionScan exclusion_scan(const SweepConfig& cfg, int jobs = 0);

}  // namespace hetlab
