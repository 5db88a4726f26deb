#include "hetlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace ode = boost::numeric::odeint;

namespace hetlab {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Counter-based generator: each consumer seeds a fresh stream from
// (seed, index), so results do not depend on thread scheduling.
struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : s(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1))) {
        next();
    }
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    void normal_pair(double& n1, double& n2) {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        n1 = r * std::cos(2.0 * std::numbers::pi * u2);
        n2 = r * std::sin(2.0 * std::numbers::pi * u2);
    }
};

using Stepper = ode::controlled_runge_kutta<ode::runge_kutta_fehlberg78<Point5>>;

Stepper make_stepper(double atol, double rtol) {
    return ode::make_controlled<ode::runge_kutta_fehlberg78<Point5>>(atol, rtol);
}

double norm5(const Point5& v) {
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

}  // namespace

double default_max_step(const GameParameters& p) {
    return 1.5 / (1.0 + std::max(p.c_a, p.c_b));
}

Trajectory integrate(const LVSystem& sys, const Point5& x0, const IntegrateOptions& opt) {
    if (sys.n != 5) throw std::runtime_error("integrate: five-species system expected");
    Trajectory traj;
    auto rhs = [&sys](const Point5& x, Point5& dxdt, double) {
        vector_field(sys, x.data(), dxdt.data());
    };
    // coordinates that start on an invariant hyperplane stay there and are
    // excluded from the absorption test
    std::array<bool, 5> support{};
    for (int i = 0; i < 5; ++i) support[static_cast<size_t>(i)] = x0[static_cast<size_t>(i)] > 0;

    Stepper stepper = make_stepper(opt.atol, opt.rtol);
    Point5 x = x0;
    double t = 0.0;
    double h = std::min(opt.max_step, 1e-2);
    traj.t.push_back(t);
    traj.x.push_back(x);
    while (opt.t_max - t > 1e-9) {
        h = std::min({h, opt.max_step, opt.t_max - t});
        if (stepper.try_step(rhs, x, t, h) == ode::fail) {
            if (h < 1e-14) {
                traj.step_underflow = true;
                break;
            }
            continue;
        }
        traj.t.push_back(t);
        traj.x.push_back(x);
        double mn = inf;
        for (int i = 0; i < 5; ++i)
            if (support[static_cast<size_t>(i)]) mn = std::min(mn, x[static_cast<size_t>(i)]);
        if (mn < opt.absorb_floor) {
            traj.absorbed = true;
            break;
        }
    }
    return traj;
}

std::vector<Visit> extract_itinerary(const Trajectory& traj, double eta) {
    std::vector<Visit> out;
    int cur = -1;
    double t0 = 0.0;
    for (size_t i = 0; i < traj.t.size(); ++i) {
        const Point5& x = traj.x[i];
        int k = 0;
        double dk = inf;
        for (int j = 0; j < 5; ++j) {
            double s = 0;
            for (int c = 0; c < 5; ++c) {
                const double d = x[static_cast<size_t>(c)] - (c == j ? 1.0 : 0.0);
                s += d * d;
            }
            if (s < dk) {
                dk = s;
                k = j;
            }
        }
        const bool inside = std::sqrt(dk) < eta;
        const double t = traj.t[i];
        if (inside && k != cur) {
            if (cur >= 0) out.push_back({cur, t0, t - t0});
            cur = k;
            t0 = t;
        } else if (!inside && cur >= 0) {
            out.push_back({cur, t0, t - t0});
            cur = -1;
        }
    }
    if (cur >= 0) out.push_back({cur, t0, traj.t.back() - t0});
    return out;
}

const Arc& ArcSet::at(int from, int to) const {
    const int d = ((to - from) % 5 + 5) % 5;
    if (d == 1) return arcs[static_cast<size_t>(from)];
    if (d == 3) return arcs[static_cast<size_t>(5 + from)];
    throw std::runtime_error("ArcSet: not a network connection");
}

std::vector<const Arc*> ArcSet::all() const {
    std::vector<const Arc*> out;
    for (const Arc& a : arcs) out.push_back(&a);
    return out;
}

std::vector<const Arc*> ArcSet::cycle_arcs(const CycleSpec& cycle) const {
    std::vector<const Arc*> out;
    const int m = cycle.size();
    for (int i = 0; i < m; ++i)
        out.push_back(&at(cycle.nodes[static_cast<size_t>(i)],
                          cycle.nodes[static_cast<size_t>((i + 1) % m)]));
    return out;
}

namespace {

Arc resample_by_chord(const std::vector<Point5>& pts, int npts) {
    std::vector<double> s(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i) {
        Point5 d;
        for (int c = 0; c < 5; ++c)
            d[static_cast<size_t>(c)] = pts[i][static_cast<size_t>(c)] - pts[i - 1][static_cast<size_t>(c)];
        s[i] = s[i - 1] + norm5(d);
    }
    Arc out(static_cast<size_t>(npts));
    const double total = s.back();
    size_t seg = 0;
    for (int k = 0; k < npts; ++k) {
        const double target = total * k / (npts - 1);
        while (seg + 2 < s.size() && s[seg + 1] < target) ++seg;
        const double w = s[seg + 1] > s[seg] ? (target - s[seg]) / (s[seg + 1] - s[seg]) : 0.0;
        for (int c = 0; c < 5; ++c)
            out[static_cast<size_t>(k)][static_cast<size_t>(c)] =
                pts[seg][static_cast<size_t>(c)] +
                w * (pts[seg + 1][static_cast<size_t>(c)] - pts[seg][static_cast<size_t>(c)]);
    }
    return out;
}

Arc face_arc(const LVSystem& sys, int src, int dst, double eps, int npts, double max_step) {
    auto rhs = [&sys](const Point5& x, Point5& dxdt, double) {
        vector_field(sys, x.data(), dxdt.data());
    };
    Point5 x{};
    x[static_cast<size_t>(src)] = 1.0;
    x[static_cast<size_t>(dst)] = eps;
    std::vector<Point5> pts{x};
    Stepper stepper = make_stepper(1e-14, 1e-10);
    double t = 0.0, h = 1e-2;
    while (t < 2000.0) {
        h = std::min(h, max_step);
        if (stepper.try_step(rhs, x, t, h) == ode::fail) {
            if (h < 1e-14) break;
            continue;
        }
        if (x[static_cast<size_t>(src)] < eps) {
            // clip the last segment to the exit section x_src = eps
            const Point5& prev = pts.back();
            const double num = prev[static_cast<size_t>(src)] - eps;
            const double den = prev[static_cast<size_t>(src)] - x[static_cast<size_t>(src)];
            const double f = den > 0 ? num / den : 1.0;
            Point5 hitp;
            for (int c = 0; c < 5; ++c)
                hitp[static_cast<size_t>(c)] =
                    prev[static_cast<size_t>(c)] +
                    f * (x[static_cast<size_t>(c)] - prev[static_cast<size_t>(c)]);
            pts.push_back(hitp);
            break;
        }
        pts.push_back(x);
    }
    if (pts.size() < 2) throw std::runtime_error("face_arc: integration produced no arc");
    return resample_by_chord(pts, npts);
}

}  // namespace

ArcSet build_connection_arcs(const GameParameters& p, int npts, double eps) {
    if (!p.valid()) throw std::runtime_error("build_connection_arcs: invalid parameters");
    const LVSystem sys = rspls_system(p);
    const double hmax = std::min(0.25, default_max_step(p));
    ArcSet out;
    for (int j = 0; j < 5; ++j) {
        out.arcs[static_cast<size_t>(j)] = face_arc(sys, j, (j + 1) % 5, eps, npts, hmax);
        out.arcs[static_cast<size_t>(5 + j)] = face_arc(sys, j, (j + 3) % 5, eps, npts, hmax);
    }
    return out;
}

double dist_to_polyline(const Point5& x, const Arc& arc) {
    double best = inf;
    for (size_t i = 0; i + 1 < arc.size(); ++i) {
        const Point5& a = arc[i];
        const Point5& b = arc[i + 1];
        double ab2 = 0, dot = 0;
        for (int c = 0; c < 5; ++c) {
            const double e = b[static_cast<size_t>(c)] - a[static_cast<size_t>(c)];
            ab2 += e * e;
            dot += (x[static_cast<size_t>(c)] - a[static_cast<size_t>(c)]) * e;
        }
        const double w = ab2 > 0 ? std::clamp(dot / ab2, 0.0, 1.0) : 0.0;
        double d2 = 0;
        for (int c = 0; c < 5; ++c) {
            const double e = x[static_cast<size_t>(c)] - a[static_cast<size_t>(c)] -
                             w * (b[static_cast<size_t>(c)] - a[static_cast<size_t>(c)]);
            d2 += e * e;
        }
        best = std::min(best, d2);
    }
    return std::sqrt(best);
}

double dist_to_arcs(const Point5& x, const std::vector<const Arc*>& arcs) {
    double best = inf;
    for (const Arc* a : arcs) best = std::min(best, dist_to_polyline(x, *a));
    return best;
}

std::vector<Point5> tube_samples(const ArcSet& arcs, const CycleSpec& cycle, int n,
                                 double delta, std::uint64_t seed) {
    const auto carcs = arcs.cycle_arcs(cycle);
    const size_t na = carcs.size();
    // per-arc cumulative segment lengths
    std::vector<std::vector<double>> cums(na);
    std::vector<double> lens(na);
    for (size_t a = 0; a < na; ++a) {
        const Arc& arc = *carcs[a];
        cums[a].assign(arc.size(), 0.0);
        for (size_t i = 1; i < arc.size(); ++i) {
            Point5 d;
            for (int c = 0; c < 5; ++c)
                d[static_cast<size_t>(c)] =
                    arc[i][static_cast<size_t>(c)] - arc[i - 1][static_cast<size_t>(c)];
            cums[a][i] = cums[a][i - 1] + norm5(d);
        }
        lens[a] = cums[a].back();
    }
    const double total = std::accumulate(lens.begin(), lens.end(), 0.0);

    std::vector<Point5> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        SplitMix64 rng(seed, static_cast<std::uint64_t>(i));
        // length-weighted arc, uniform arc-length position
        double pick = rng.uniform() * total;
        size_t ai = 0;
        while (ai + 1 < na && pick > lens[ai]) {
            pick -= lens[ai];
            ++ai;
        }
        const Arc& arc = *carcs[ai];
        const auto& cs = cums[ai];
        const double s = rng.uniform() * lens[ai];
        size_t j = static_cast<size_t>(std::upper_bound(cs.begin(), cs.end(), s) - cs.begin());
        j = std::clamp<size_t>(j, 1, arc.size() - 1) - 1;
        const double seg = cs[j + 1] - cs[j];
        const double w = seg > 0 ? (s - cs[j]) / seg : 0.0;
        Point5 base, tan;
        for (int c = 0; c < 5; ++c) {
            const double e =
                arc[j + 1][static_cast<size_t>(c)] - arc[j][static_cast<size_t>(c)];
            base[static_cast<size_t>(c)] = arc[j][static_cast<size_t>(c)] + w * e;
            tan[static_cast<size_t>(c)] = e;
        }
        const double tn = norm5(tan);
        for (double& c : tan) c /= tn;
        // uniform direction in the normal 4-disc
        Point5 v;
        double spare = 0;
        rng.normal_pair(v[0], v[1]);
        rng.normal_pair(v[2], v[3]);
        rng.normal_pair(v[4], spare);
        double proj = 0;
        for (int c = 0; c < 5; ++c) proj += v[static_cast<size_t>(c)] * tan[static_cast<size_t>(c)];
        for (int c = 0; c < 5; ++c) v[static_cast<size_t>(c)] -= proj * tan[static_cast<size_t>(c)];
        double vn = norm5(v);
        if (vn < 1e-12) {
            v = {1, 0, 0, 0, 0};
            proj = tan[0];
            for (int c = 0; c < 5; ++c) v[static_cast<size_t>(c)] -= proj * tan[static_cast<size_t>(c)];
            vn = norm5(v);
        }
        const double r = delta * std::pow(rng.uniform(), 0.25);
        Point5& x0 = out[static_cast<size_t>(i)];
        for (int c = 0; c < 5; ++c)
            x0[static_cast<size_t>(c)] = std::abs(base[static_cast<size_t>(c)] +
                                                  r * v[static_cast<size_t>(c)] / vn);
    }
    return out;
}

RunInfo longest_pattern_run(const std::vector<int>& seq, const std::vector<int>& pattern) {
    RunInfo best;
    const int m = static_cast<int>(pattern.size());
    const int len = static_cast<int>(seq.size());
    for (int rot = 0; rot < m; ++rot) {
        int run = 0;
        for (int i = 0; i < len; ++i) {
            const int expect = pattern[static_cast<size_t>((rot + run) % m)];
            if (seq[static_cast<size_t>(i)] == expect)
                ++run;
            else if (seq[static_cast<size_t>(i)] == pattern[static_cast<size_t>(rot)])
                run = 1;
            else
                run = 0;
            const bool at_end = i == len - 1;
            if (run > best.run || (run == best.run && at_end && !best.at_end))
                best = {run, i - run + 1, at_end};
        }
    }
    return best;
}

ShadowResult classify_shadowing(const std::vector<Visit>& visits, const Trajectory& traj,
                                const ArcSet& arcs, double delta) {
    std::vector<int> seq;
    for (const Visit& v : visits) seq.push_back(v.node);

    ShadowResult best;
    const CycleSpec* best_spec = nullptr;
    static const std::vector<CycleSpec> instances = elementary_cycles();
    for (const CycleSpec& spec : instances) {
        const int m = spec.size();
        const RunInfo r = longest_pattern_run(seq, spec.nodes);
        const int laps = r.run > 0 ? (r.run - 1) / m : 0;
        bool ok = laps >= 2;
        bool via_absorbed = false;
        if (!ok && m == 5 && traj.absorbed && r.at_end) {
            // within the depth budget a 5-node cycle cannot complete two true
            // laps; an absorbed trajectory that ends on pattern with more
            // than one full period (or spends its whole life on pattern)
            // certifies it instead
            const bool whole = r.start == 0 && r.run == static_cast<int>(seq.size());
            ok = r.run >= m + 1 || (whole && r.run >= m);
            via_absorbed = ok;
        }
        if (!ok) continue;
        const bool better =
            !best.qualified || r.run > best.run ||
            (r.run == best.run && m > static_cast<int>(best.nodes.size()));
        if (!better) continue;
        best.qualified = true;
        best.family = spec.family;
        best.rotation = spec.rotation;
        best.nodes = spec.nodes;
        best.run = r.run;
        best.laps = laps;
        best.start = r.start;
        best.absorbed_certified = via_absorbed;
        best_spec = &spec;
    }
    if (!best.qualified) return best;

    // stay check against the winner's own arcs, after one settling period
    const auto warcs = arcs.cycle_arcs(*best_spec);
    const size_t settle = static_cast<size_t>(best.start) + best.nodes.size();
    if (settle < visits.size()) {
        const double t_settle = visits[settle].entry;
        size_t first = 0;
        while (first < traj.t.size() && traj.t[first] < t_settle) ++first;
        const size_t count = traj.t.size() - first;
        const size_t stride = std::max<size_t>(1, count / 150);
        double dmax = 0.0;
        for (size_t i = first; i < traj.t.size(); i += stride)
            dmax = std::max(dmax, dist_to_arcs(traj.x[i], warcs));
        best.stay_dmax = dmax;
        best.stay_ok = dmax <= delta;
    } else {
        best.stay_ok = true;  // absorbed before completing a settling period
    }
    return best;
}

double TubeStudy::fraction(const std::string& family) const {
    const auto it = wins.find(family);
    return n > 0 && it != wins.end() ? static_cast<double>(it->second) / n : 0.0;
}

TubeStudy tube_study(const GameParameters& p, const CycleSpec& cycle, int n, double delta,
                     double eta, std::uint64_t seed) {
    if (n < 1) throw std::runtime_error("tube_study: need at least one sample");
    TubeStudy study;
    study.params = p;
    study.cycle = cycle;
    study.n = n;
    study.delta = delta;
    study.eta = eta;
    study.seed = seed;

    const LVSystem sys = rspls_system(p);
    const ArcSet arcs = build_connection_arcs(p);
    const auto x0s = tube_samples(arcs, cycle, n, delta, seed);
    IntegrateOptions opt;
    opt.max_step = default_max_step(p);

    study.per_sample.resize(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const Trajectory traj = integrate(sys, x0s[static_cast<size_t>(i)], opt);
        const auto visits = extract_itinerary(traj, eta);
        study.per_sample[static_cast<size_t>(i)] = classify_shadowing(visits, traj, arcs, delta);
    }

    for (const ShadowResult& r : study.per_sample) {
        if (!r.qualified) {
            ++study.none;
            continue;
        }
        const std::string fam = cycle_family_name(r.family);
        if (!r.stay_ok) {
            ++study.stay_fail[fam];
            continue;
        }
        ++study.wins[fam];
        if (r.family == cycle.family &&
            (r.family == CycleFamily::RockToPaper || r.family == CycleFamily::Star ||
             r.nodes == cycle.nodes))
            ++study.sampled_rotation;
    }
    for (const auto& [fam, c] : study.wins) study.attracted += c;
    return study;
}

NetworkAttraction network_attraction_test(const GameParameters& p, int n, std::uint64_t seed,
                                          double tol) {
    if (n < 1) throw std::runtime_error("network_attraction_test: need at least one sample");
    NetworkAttraction out;
    out.params = p;
    out.n = n;
    out.tol = tol;

    const LVSystem sys = rspls_system(p);
    const ArcSet arcs = build_connection_arcs(p);
    const auto all = arcs.all();

    // sequential rejection sampling keeps the accepted list independent of
    // the worker count
    std::vector<Point5> x0s;
    SplitMix64 rng(seed, 0);
    while (static_cast<int>(x0s.size()) < n) {
        Point5 x;
        for (int c = 0; c < 5; ++c) x[static_cast<size_t>(c)] = 1.2 * rng.uniform();
        if (dist_to_arcs(x, all) < 0.3) x0s.push_back(x);
    }

    IntegrateOptions opt;
    opt.max_step = default_max_step(p);
    out.final_distances.assign(static_cast<size_t>(n), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const Trajectory traj = integrate(sys, x0s[static_cast<size_t>(i)], opt);
        out.final_distances[static_cast<size_t>(i)] = dist_to_arcs(traj.x.back(), all);
    }
    for (double d : out.final_distances)
        if (d < tol) ++out.approached;
    return out;
}

}  // namespace hetlab
