#include "hetlab/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hetlab/network.hpp"

namespace hetlab {

bool SweepConfig::valid() const {
    return nx >= 2 && ny >= 2 && ca_lo > 0 && cb_lo > 0 && ca_hi > ca_lo &&
           cb_hi > cb_lo && e_a > 0 && e_b > 0;
}

double ca_at(const SweepConfig& cfg, int col) {
    return cfg.ca_lo + (col + 0.5) * (cfg.ca_hi - cfg.ca_lo) / cfg.nx;
}

double cb_at(const SweepConfig& cfg, int row) {
    return cfg.cb_hi - (row + 0.5) * (cfg.cb_hi - cfg.cb_lo) / cfg.ny;
}

namespace {

bool attracting(Classification c) {
    return c == Classification::FragmentarilyStable ||
           c == Classification::EssentiallyStable;
}

}  // namespace

PixelClass classify_pixel(const GameParameters& p) {
    PixelClass out;
    out.sigma = std::numeric_limits<double>::quiet_NaN();
    bool marginal = false;
    int attractor = -1;
    bool eas = false;
    double sigma = std::numeric_limits<double>::quiet_NaN();
    for (int f = 0; f < 4; ++f) {
        const CycleSpec cyc = canonical_cycle(static_cast<CycleFamily>(f));
        const StabilityReport gen = stability_indices_generic(cyc, p);
        const StabilityReport clo = stability_indices_closed_form(cyc, p);
        out.generic_class[f] = gen.classification;
        out.closed_class[f] = clo.classification;
        if (!reports_agree(gen, clo)) out.conflict = true;
        if (gen.classification == Classification::Marginal ||
            clo.classification == Classification::Marginal)
            marginal = true;
        if (attracting(clo.classification)) {
            if (attractor >= 0) out.exclusion_violation = true;
            attractor = f;
            eas = clo.classification == Classification::EssentiallyStable;
            double s = std::numeric_limits<double>::infinity();
            for (const StabilityIndex& ix : gen.indices) s = std::min(s, ix.value);
            sigma = s;
        }
    }
    if (out.conflict || out.exclusion_violation) {
        out.code = 7;
    } else if (marginal) {
        out.code = 6;
    } else if (attractor >= 0) {
        switch (static_cast<CycleFamily>(attractor)) {
            case CycleFamily::RockToPaper: out.code = eas ? 2 : 1; break;
            case CycleFamily::Star: out.code = 3; break;
            case CycleFamily::RSP: out.code = 4; break;
            case CycleFamily::FourNode: out.code = 5; break;
        }
        out.sigma = sigma;
    }
    return out;
}

namespace {

void sweep_pixel(const SweepConfig& cfg, int row, int col, SweepResult& res) {
    GameParameters p{ca_at(cfg, col), cb_at(cfg, row), cfg.e_a, cfg.e_b};
    const PixelClass pc = classify_pixel(p);
    const std::size_t k = std::size_t(row) * cfg.nx + col;
    res.codes[k] = pc.code;
    res.sigmas[k] = pc.sigma;
}

SweepResult make_result(const SweepConfig& cfg) {
    if (!cfg.valid()) throw std::runtime_error("invalid sweep configuration");
    SweepResult res;
    res.config = cfg;
    res.codes.assign(std::size_t(cfg.nx) * cfg.ny, 0);
    res.sigmas.assign(std::size_t(cfg.nx) * cfg.ny,
                      std::numeric_limits<double>::quiet_NaN());
    return res;
}

}  // namespace

SweepResult run_sweep_serial(const SweepConfig& cfg) {
    SweepResult res = make_result(cfg);
    for (int row = 0; row < cfg.ny; ++row)
        for (int col = 0; col < cfg.nx; ++col) sweep_pixel(cfg, row, col, res);
    return res;
}

SweepResult run_sweep_parallel(const SweepConfig& cfg, int jobs) {
    SweepResult res = make_result(cfg);
    const int nthreads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (int row = 0; row < cfg.ny; ++row)
        for (int col = 0; col < cfg.nx; ++col) sweep_pixel(cfg, row, col, res);
    return res;
}

SweepResult run_sweep(const SweepConfig& cfg, int jobs) {
    if (jobs == 1) return run_sweep_serial(cfg);
    return run_sweep_parallel(cfg, jobs);
}

void write_sweep_csv(const std::string& path, const SweepResult& res) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fputs("c_a,c_b,code,sigma\n", f);
    const SweepConfig& cfg = res.config;
    for (int row = 0; row < cfg.ny; ++row) {
        const double cb = cb_at(cfg, row);
        for (int col = 0; col < cfg.nx; ++col) {
            const std::size_t k = std::size_t(row) * cfg.nx + col;
            std::fprintf(f, "%.17g,%.17g,%d,%.17g\n", ca_at(cfg, col), cb,
                         int(res.codes[k]), res.sigmas[k]);
        }
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("c_a,c_b,code,sigma", 0) != 0)
        throw std::runtime_error("bad sweep CSV header in " + path);
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SweepRow r;
        char* s = line.data();
        char* end = nullptr;
        r.c_a = std::strtod(s, &end);
        if (end == s || *end != ',') throw std::runtime_error("bad CSV row: " + line);
        s = end + 1;
        r.c_b = std::strtod(s, &end);
        if (end == s || *end != ',') throw std::runtime_error("bad CSV row: " + line);
        s = end + 1;
        r.code = int(std::strtol(s, &end, 10));
        if (end == s || *end != ',') throw std::runtime_error("bad CSV row: " + line);
        s = end + 1;
        r.sigma = std::strtod(s, &end);
        if (end == s) throw std::runtime_error("bad CSV row: " + line);
        rows.push_back(r);
    }
    return rows;
}

const std::array<std::array<int, 3>, 8>& palette() {
    static const std::array<std::array<int, 3>, 8> pal{{
        {40, 40, 40},     // 0 all c.u.
        {100, 149, 237},  // 1 rock-to-paper f.a.s.
        {25, 25, 112},    // 2 rock-to-paper e.a.s.
        {255, 140, 0},    // 3 star
        {60, 179, 113},   // 4 rock-scissors-paper
        {148, 0, 211},    // 5 four-node
        {255, 215, 0},    // 6 marginal
        {220, 20, 60},    // 7 pipeline conflict
    }};
    return pal;
}

void write_sweep_pixmap(const std::string& path, const SweepResult& res) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    const SweepConfig& cfg = res.config;
    std::fprintf(f, "P3\n%d %d\n255\n", cfg.nx, cfg.ny);
    const auto& pal = palette();
    for (int row = 0; row < cfg.ny; ++row) {
        for (int col = 0; col < cfg.nx; ++col) {
            const auto& c = pal[res.codes[std::size_t(row) * cfg.nx + col] & 7];
            std::fprintf(f, "%d %d %d%c", c[0], c[1], c[2],
                         col + 1 == cfg.nx ? '\n' : ' ');
        }
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
}

std::vector<std::uint8_t> read_pixmap_codes(const std::string& path, int* nx, int* ny) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {  // comment runs to end of line
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw std::runtime_error("truncated pixmap: " + path);
    };
    if (next_token() != "P3") throw std::runtime_error("not a plain pixmap: " + path);
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0 || maxval != 255)
        throw std::runtime_error("unsupported pixmap geometry in " + path);
    if (nx) *nx = w;
    if (ny) *ny = h;
    const auto& pal = palette();
    std::vector<std::uint8_t> codes(std::size_t(w) * h);
    for (std::size_t k = 0; k < codes.size(); ++k) {
        std::array<int, 3> rgb{std::stoi(next_token()), std::stoi(next_token()),
                               std::stoi(next_token())};
        int code = -1;
        for (int c = 0; c < 8; ++c)
            if (pal[c] == rgb) { code = c; break; }
        if (code < 0) throw std::runtime_error("pixel color not in palette: " + path);
        codes[k] = std::uint8_t(code);
    }
    return codes;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

std::map<std::string, std::string> read_key_value_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": empty key");
        kv[key] = val;
    }
    return kv;
}

ExclusionScan exclusion_scan(const SweepConfig& cfg, int jobs) {
    if (!cfg.valid()) throw std::runtime_error("invalid sweep configuration");
    ExclusionScan tally;
    tally.pixels = long(cfg.nx) * cfg.ny;
    long five = 0, small = 0, regime = 0, all_unstable = 0;
    const int nthreads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) \
    reduction(+ : five, small, regime, all_unstable)
    for (int row = 0; row < cfg.ny; ++row) {
        for (int col = 0; col < cfg.nx; ++col) {
            GameParameters p{ca_at(cfg, col), cb_at(cfg, row), cfg.e_a, cfg.e_b};
            const PixelClass pc = classify_pixel(p);
            const auto& cl = pc.closed_class;
            const bool r2p = attracting(cl[0]), star = attracting(cl[1]);
            const bool rsp = attracting(cl[2]), four = attracting(cl[3]);
            if (r2p && star) ++five;
            if (rsp && four) ++small;
            const int n_attracting = int(r2p) + int(star) + int(rsp) + int(four);
            if (p.as_regime() && n_attracting > 1) ++regime;
            bool all_cu = true;
            for (int f = 0; f < 4; ++f)
                all_cu = all_cu && cl[f] == Classification::CompletelyUnstable;
            if (all_cu) ++all_unstable;
        }
    }
    tally.five_node_violations = five;
    tally.small_cycle_violations = small;
    tally.regime_violations = regime;
    tally.all_unstable = all_unstable;
    return tally;
}

}  // namespace hetlab
