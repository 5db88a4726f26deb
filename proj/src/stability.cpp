#include "hetlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hetlab {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::string num17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// tri-state of "v > 0" with a dead band relative to both 1 and the natural
// magnitude of the expression.  Infinite values are decisively signed (an
// index of -inf means a transition row with no positive entry, not a
// borderline case).
tri tri1(double v, double scale = 1.0) {
    if (std::isinf(v)) return v > 0 ? tri::yes : tri::no;
    return tri_sign(v, std::max(scale, std::abs(v)));
}

bool attracting(Classification c) {
    return c == Classification::FragmentarilyStable || c == Classification::EssentiallyStable;
}

}  // namespace

DerivedConstants derived_constants(const GameParameters& p) {
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    DerivedConstants d;
    d.delta_t = ca * ca * cb / (ea * ea * eb);
    d.alpha_t = cb * cb / (ea * ea) - ca * cb / (eb * ea) - eb / ea;
    d.beta_t = cb * cb * ca / (ea * ea * eb) - eb * cb / (ea * ea) + ca / ea;
    d.gamma_t = ca * ca * ca / (ea * ea * eb) + cb * ca / (eb * ea) - eb / ea;
    d.theta_t = -ca * ca / (ea * ea) + cb / ea - ca / eb;
    d.mu_t = cb * cb * ca / (ea * ea * eb) - ca / ea - ea / eb;
    d.nu_t = -cb * ca / (ea * ea) + ca * ca / (ea * eb) + cb / eb;
    return d;
}

double f_index(const std::array<double, 3>& alpha) {
    const double mn = *std::min_element(alpha.begin(), alpha.end());
    const double mx = *std::max_element(alpha.begin(), alpha.end());
    const double s = alpha[0] + alpha[1] + alpha[2];
    if (mn >= 0) return inf;
    if (mx <= 0) return -inf;
    if (s == 0) return 0.0;
    return s < 0 ? s / mx : -s / mn;
}

namespace {

// f_index specializations for the two row shapes that occur in the reduced
// index formulas.  The positive branches are written with an explicit
// reciprocal so that simple parameter ratios evaluate without an avoidable
// rounding step (e.g. e_A/e_B - 1 instead of (1 - e_B/e_A)/(e_B/e_A)).
double index_term_q(double q) {  // row (q, 1, 0)
    if (q >= 0) return inf;
    const double s = 1.0 + q;
    if (s == 0) return 0.0;
    return s < 0 ? s : -1.0 / q - 1.0;
}

double index_term_w(double w) {  // row (1, -w, 0)
    if (w <= 0) return inf;
    const double s = 1.0 - w;
    if (s == 0) return 0.0;
    return s < 0 ? s : 1.0 / w - 1.0;
}

struct CubicRoots {
    std::array<std::complex<double>, 3> r;
};

// Roots of the characteristic polynomial l^3 - tr l^2 + m2 l - det.
// Real roots are produced with exactly zero imaginary part; a complex pair
// is produced as an exact conjugate pair.  Each root gets a few Newton
// polishing steps on the monic cubic.
CubicRoots char_roots(double trc, double m2, double det) {
    const double a = -trc, b = m2, c = -det;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;

    auto poly = [&](std::complex<double> x) { return ((x + a) * x + b) * x + c; };
    auto dpoly = [&](std::complex<double> x) { return (3.0 * x + 2.0 * a) * x + b; };
    auto polish = [&](std::complex<double> x) {
        for (int it = 0; it < 3; ++it) {
            const std::complex<double> d = dpoly(x);
            if (std::abs(d) < 1e-300) break;
            x -= poly(x) / d;
        }
        return x;
    };
    auto polish_real = [&](double x) {
        for (int it = 0; it < 3; ++it) {
            const double d = (3.0 * x + 2.0 * a) * x + b;
            if (std::abs(d) < 1e-300) break;
            x -= (((x + a) * x + b) * x + c) / d;
        }
        return x;
    };

    CubicRoots out;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (p == 0.0 && q == 0.0) {
        out.r = {shift, shift, shift};
        return out;
    }
    if (disc >= 0.0) {
        // three real roots (possibly repeated), trigonometric form
        const double mpre = 2.0 * std::sqrt(std::max(-p, 0.0) / 3.0);
        double arg = 0.0;
        if (mpre > 0.0) arg = 3.0 * q / (p * mpre);
        arg = std::clamp(arg, -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            const double t = mpre * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
            out.r[static_cast<size_t>(k)] = polish_real(t + shift);
        }
        return out;
    }
    // one real root, one conjugate pair (Cardano)
    const double rad = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double u = std::cbrt(-q / 2.0 + rad);
    const double v = std::cbrt(-q / 2.0 - rad);
    const double t0 = u + v;
    const double re = -t0 / 2.0;
    const double im = std::sqrt(std::max(3.0 * t0 * t0 + 4.0 * p, 0.0)) / 2.0;
    const double real_root = polish_real(t0 + shift);
    std::complex<double> pair = polish({re + shift, im});
    if (pair.imag() < 0) pair = std::conj(pair);
    out.r = {real_root, pair, std::conj(pair)};
    return out;
}

// Null vector of a (numerically) rank-2 matrix via the largest cross
// product of two rows; returns false when no pair of rows spans a plane.
bool null_vector(const Mat3& m, std::array<double, 3>& out) {
    double best = 0.0;
    std::array<double, 3> bestv{};
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const auto ri = m.row(i), rj = m.row(j);
            const std::array<double, 3> cr = {ri[1] * rj[2] - ri[2] * rj[1],
                                              ri[2] * rj[0] - ri[0] * rj[2],
                                              ri[0] * rj[1] - ri[1] * rj[0]};
            const double n = std::abs(cr[0]) + std::abs(cr[1]) + std::abs(cr[2]);
            if (n > best) {
                best = n;
                bestv = cr;
            }
        }
    }
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(m.at(i, j)));
    if (best <= 1e-13 * std::max(1.0, scale * scale)) return false;
    out = bestv;
    return true;
}

// Normalize so that the component of largest magnitude becomes +1.
void normalize_leading(std::array<double, 3>& w) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(w[static_cast<size_t>(i)]) > std::abs(w[static_cast<size_t>(k)])) k = i;
    const double d = w[static_cast<size_t>(k)];
    for (auto& x : w) x /= d;
}

}  // namespace

SpectralData spectral_check(const Mat3& m) {
    SpectralData out;
    const double trc = m.at(0, 0) + m.at(1, 1) + m.at(2, 2);
    const double m2 = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0) +
                      m.at(0, 0) * m.at(2, 2) - m.at(0, 2) * m.at(2, 0) +
                      m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1);
    const double det = m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
                       m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
                       m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    auto roots = char_roots(trc, m2, det).r;
    std::sort(roots.begin(), roots.end(),
              [](const std::complex<double>& x, const std::complex<double>& y) {
                  return std::abs(x) > std::abs(y);
              });
    out.lambdas = roots;
    const std::complex<double> l0 = roots[0], l1 = roots[1];
    const double scale = std::max(1.0, std::abs(l0));

    if (std::abs(l0.imag()) > 1e-12 * scale) {
        // dominant modulus attained by a complex pair
        out.cond_i = tri::no;
        out.lambda_max = std::abs(l0);
        return out;
    }
    const bool tie = std::abs(std::abs(l0) - std::abs(l1)) <= 1e-12 * scale;
    if (tie && std::abs(l0 - l1) > 1e-9 * scale && std::abs(l0 - std::conj(l1)) > 1e-9 * scale) {
        // two distinct eigenvalues share the maximal modulus
        out.cond_i = tri::marginal;
        out.lambda_max = l0.real();
        return out;
    }
    out.cond_i = tri::yes;
    out.lambda_max = l0.real();
    out.cond_ii = tri1(out.lambda_max - 1.0);

    Mat3 shifted = m;
    for (int i = 0; i < 3; ++i) shifted.at(i, i) -= out.lambda_max;
    if (!null_vector(shifted, out.w_max)) {
        out.defective = true;
        out.cond_iii = tri::marginal;
        return out;
    }
    normalize_leading(out.w_max);
    const double wmin = *std::min_element(out.w_max.begin(), out.w_max.end());
    const double wmax = *std::max_element(out.w_max.begin(), out.w_max.end());
    out.cond_iii = tri_sign(wmin * wmax, 1.0);

    Mat3 transposed;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) transposed.at(i, j) = shifted.at(j, i);
    if (null_vector(transposed, out.v_max)) {
        normalize_leading(out.v_max);
        out.left_nonnegative =
            *std::min_element(out.v_max.begin(), out.v_max.end()) >= -1e-12;
    }
    return out;
}

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::CompletelyUnstable: return "c.u.";
        case Classification::FragmentarilyStable: return "f.a.s.";
        case Classification::EssentiallyStable: return "e.a.s.";
        case Classification::Marginal: return "marginal";
        case Classification::Unsupported: return "unsupported";
    }
    throw std::runtime_error("bad classification");
}

VietaConditions vieta_conditions(CycleFamily family, const GameParameters& p) {
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    VietaConditions v;
    v.sum_exceeds_one = tri1(ca + cb - ea - eb, std::max(ca + cb, ea + eb));
    if (family == CycleFamily::RockToPaper) {
        v.pair_product = tri1(ca * ea - cb * eb, std::max(ca * ea, cb * eb));
        v.cubic_product =
            tri1(ca * cb * cb * cb - ea * eb * eb * eb, std::max(ca * cb * cb * cb, ea * eb * eb * eb));
    } else if (family == CycleFamily::Star) {
        v.pair_product = tri1(cb * eb - ca * ea, std::max(ca * ea, cb * eb));
        v.cubic_product =
            tri1(ca * ca * ca * eb - cb * ea * ea * ea, std::max(ca * ca * ca * eb, cb * ea * ea * ea));
    } else {
        throw std::runtime_error("vieta_conditions: only defined for the five-node cycles");
    }
    return v;
}

StabilityReport stability_indices_generic(const CycleSpec& cycle, const GameParameters& p) {
    if (!p.valid()) throw std::runtime_error("stability: parameters must be positive");
    StabilityReport rep;
    rep.cycle = cycle;
    rep.method = "generic";
    const int m = cycle.size();

    tri worst = tri::yes;
    bool left_ok_all = true;
    bool any_fail_uncertified = false;
    for (int j = 0; j < m; ++j) {
        const auto chain = product_chain(cycle, j, p);
        const SpectralData s = spectral_check(chain.back().m);
        const std::string& lab = chain.back().label;
        rep.conditions.push_back({lab + " (i) leading eigenvalue real", s.cond_i});
        rep.conditions.push_back({lab + " (ii) leading eigenvalue > 1", s.cond_ii});
        rep.conditions.push_back({lab + " (iii) eigenvector one-signed", s.cond_iii});
        worst = std::min({worst, s.cond_i, s.cond_ii, s.cond_iii});
        if (s.cond_i == tri::yes && !s.left_nonnegative) left_ok_all = false;
        if ((s.cond_i == tri::no || s.cond_ii == tri::no || s.cond_iii == tri::no) &&
            !(s.cond_i == tri::yes && s.left_nonnegative))
            any_fail_uncertified = true;

        double sigma = inf;
        for (const auto& t : chain)
            for (int r = 0; r < 3; ++r) sigma = std::min(sigma, f_index(t.m.row(r)));
        StabilityIndex idx;
        idx.from_node = cycle.nodes[static_cast<size_t>((j + m - 1) % m)];
        idx.to_node = cycle.nodes[static_cast<size_t>(j)];
        idx.value = sigma;
        rep.indices.push_back(idx);
    }

    if (worst == tri::no) {
        rep.classification = Classification::CompletelyUnstable;
        for (auto& idx : rep.indices) idx.value = -inf;
        rep.minus_infinity_certified = !any_fail_uncertified;
        if (any_fail_uncertified)
            rep.warnings.push_back(
                "a failing full turn lacks a nonnegative left eigenvector; the all--inf "
                "conclusion rests on the failed condition alone");
        return rep;
    }
    if (worst == tri::marginal) {
        rep.classification = Classification::Marginal;
        return rep;
    }
    if (!left_ok_all) {
        rep.classification = Classification::Marginal;
        rep.warnings.push_back("left eigenvector has a negative component; index values kept "
                               "but the admissibility certificate failed");
        return rep;
    }
    rep.minus_infinity_certified = true;
    double smin = inf;
    for (const auto& idx : rep.indices) smin = std::min(smin, idx.value);
    if (smin == -inf) {
        // never observed when all full turns pass; report conservatively
        rep.classification = Classification::Marginal;
        rep.warnings.push_back("conditions pass but an index row is entirely non-positive");
        return rep;
    }
    const tri t = tri1(smin);
    rep.classification = t == tri::yes ? Classification::EssentiallyStable
                        : t == tri::no ? Classification::FragmentarilyStable
                                       : Classification::Marginal;
    return rep;
}

namespace {

void fill_minus_inf(StabilityReport& rep) {
    const int m = rep.cycle.size();
    for (int j = 0; j < m; ++j) {
        StabilityIndex idx;
        idx.from_node = rep.cycle.nodes[static_cast<size_t>((j + m - 1) % m)];
        idx.to_node = rep.cycle.nodes[static_cast<size_t>(j)];
        idx.value = -inf;
        rep.indices.push_back(idx);
    }
}

// Index of the repeating-matrix cycles from the closed-form powers: minimum
// of f_index over every row of (M)^1 .. (M)^5.  Both cycles give the same
// value on each of their five connections.
double power_family_index(const std::string& stem, const GameParameters& p) {
    double sigma = inf;
    for (int k = 1; k <= 5; ++k) {
        const auto t = closed_form_product("(" + stem + ")^" + std::to_string(k), p);
        for (int r = 0; r < 3; ++r) sigma = std::min(sigma, f_index(t.m.row(r)));
    }
    return sigma;
}

void fill_same_value(StabilityReport& rep, double sigma) {
    const int m = rep.cycle.size();
    for (int j = 0; j < m; ++j) {
        StabilityIndex idx;
        idx.from_node = rep.cycle.nodes[static_cast<size_t>((j + m - 1) % m)];
        idx.to_node = rep.cycle.nodes[static_cast<size_t>(j)];
        idx.value = sigma;
        rep.indices.push_back(idx);
    }
}

StabilityReport closed_form_rock_to_paper(const CycleSpec& cycle, const GameParameters& p) {
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    StabilityReport rep;
    rep.cycle = cycle;
    rep.method = "closed-form";
    const VietaConditions v = vieta_conditions(CycleFamily::RockToPaper, p);
    rep.conditions.push_back({"c_A + c_B > e_A + e_B", v.sum_exceeds_one});
    rep.conditions.push_back({"c_A e_A > c_B e_B", v.pair_product});
    rep.conditions.push_back({"c_A c_B^3 > e_A e_B^3", v.cubic_product});
    const tri worst = std::min({v.sum_exceeds_one, v.pair_product, v.cubic_product});
    if (worst == tri::no) {
        rep.classification = Classification::CompletelyUnstable;
        fill_minus_inf(rep);
        return rep;
    }
    if (worst == tri::marginal) {
        rep.classification = Classification::Marginal;
        return rep;
    }
    const double sigma = power_family_index("M_2", p);
    fill_same_value(rep, sigma);
    // In the stability regime all five indices are positive exactly when this
    // boundary inequality holds; the classification follows the computed
    // index so that it stays consistent with the generic pipeline for
    // parameters outside the regime as well.
    const tri eas = tri1(ca * ea - cb * eb - ea * eb, std::max({ca * ea, cb * eb, ea * eb}));
    rep.conditions.push_back({"c_A e_A - c_B e_B > e_A e_B", eas});
    const tri t = tri1(sigma);
    rep.classification = t == tri::yes  ? Classification::EssentiallyStable
                         : t == tri::no ? Classification::FragmentarilyStable
                                        : Classification::Marginal;
    return rep;
}

StabilityReport closed_form_star(const CycleSpec& cycle, const GameParameters& p) {
    StabilityReport rep;
    rep.cycle = cycle;
    rep.method = "closed-form";
    const VietaConditions v = vieta_conditions(CycleFamily::Star, p);
    rep.conditions.push_back({"c_A + c_B > e_A + e_B", v.sum_exceeds_one});
    rep.conditions.push_back({"c_B e_B > c_A e_A", v.pair_product});
    rep.conditions.push_back({"c_A^3 e_B > c_B e_A^3", v.cubic_product});
    const tri worst = std::min({v.sum_exceeds_one, v.pair_product, v.cubic_product});
    if (worst == tri::no) {
        rep.classification = Classification::CompletelyUnstable;
        fill_minus_inf(rep);
        return rep;
    }
    if (worst == tri::marginal) {
        rep.classification = Classification::Marginal;
        return rep;
    }
    const double sigma = power_family_index("M_4", p);
    fill_same_value(rep, sigma);
    const tri t = tri1(sigma);
    rep.classification = t == tri::yes  ? Classification::EssentiallyStable
                         : t == tri::no ? Classification::FragmentarilyStable
                                        : Classification::Marginal;
    if (p.e_a > p.e_b)
        rep.warnings.push_back("index upper bound 1 - e_A/e_B = " + num17(1.0 - p.e_a / p.e_b));
    return rep;
}

StabilityReport closed_form_rsp(const CycleSpec& cycle, const GameParameters& p) {
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    StabilityReport rep;
    rep.cycle = cycle;
    rep.method = "closed-form";
    const DerivedConstants d = derived_constants(p);
    const std::array<std::pair<const char*, double>, 7> conds = {{
        {"delta_T > 1", d.delta_t - 1.0},
        {"alpha_T > 0", d.alpha_t},
        {"beta_T > 0", d.beta_t},
        {"gamma_T > 0", d.gamma_t},
        {"theta_T > 0", d.theta_t},
        {"mu_T > 0", d.mu_t},
        {"nu_T > 0", d.nu_t},
    }};
    tri worst = tri::yes;
    for (const auto& [name, val] : conds) {
        const tri t = tri1(val);
        rep.conditions.push_back({name, t});
        worst = std::min(worst, t);
    }
    if (worst == tri::no) {
        rep.classification = Classification::CompletelyUnstable;
        fill_minus_inf(rep);
        return rep;
    }
    if (worst == tri::marginal) {
        rep.classification = Classification::Marginal;
        return rep;
    }
    // piecewise indices; the two-term reductions of the row minima
    const double q31 = ca / ea - eb * cb / (ea * ea);
    if (q31 >= 0)
        rep.warnings.push_back("second term of the sigma_31 minimum has no negative entry; "
                               "its reciprocal branch does not apply and the term is +inf");
    const double s31 = std::min(index_term_q(-eb / ea), index_term_q(q31));
    const double s12 = std::min(index_term_q(-eb / ea),
                                index_term_q(cb * ca / (eb * ea) - eb / ea));
    const double s23 = std::min(index_term_w(ea / eb), index_term_w(ca / ea + ea / eb));
    const std::array<double, 3> sig = {s31, s12, s23};
    const int m = cycle.size();
    double smin = inf;
    for (int j = 0; j < m; ++j) {
        StabilityIndex idx;
        idx.from_node = cycle.nodes[static_cast<size_t>((j + m - 1) % m)];
        idx.to_node = cycle.nodes[static_cast<size_t>(j)];
        idx.value = sig[static_cast<size_t>(j)];
        smin = std::min(smin, idx.value);
        rep.indices.push_back(idx);
    }
    const tri t = tri1(smin);
    rep.classification = t == tri::yes  ? Classification::EssentiallyStable
                         : t == tri::no ? Classification::FragmentarilyStable
                                        : Classification::Marginal;
    return rep;
}

StabilityReport closed_form_four_node(const CycleSpec& cycle, const GameParameters& p) {
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    StabilityReport rep;
    rep.cycle = cycle;
    rep.method = "closed-form";
    const DerivedConstants d = derived_constants(p);

    const Mat3 a = closed_form_product("Mh^(1)", p).m;
    const Mat3 b = closed_form_product("Mh^(2)", p).m;
    const Mat3 g = closed_form_product("Mh^(5)", p).m;
    const Mat3 dd = closed_form_product("Mh^(3)", p).m;
    const double trc = a.at(0, 0) + a.at(2, 2);  // lambda_1 + lambda_2, any rotation
    const double det2 = cb * cb * cb * ca / (eb * eb * eb * ea);
    const double disc = trc * trc - 4.0 * det2;
    if (disc < -1e-9 * std::max(1.0, trc * trc)) {
        // dominant pair complex; its modulus sqrt(det2) against the unit eigenvalue
        const tri t = tri1(std::sqrt(det2) - 1.0);
        rep.conditions.push_back({"leading eigenvalue real", tri::no});
        rep.classification =
            t == tri::marginal ? Classification::Marginal : Classification::CompletelyUnstable;
        if (rep.classification == Classification::CompletelyUnstable) fill_minus_inf(rep);
        return rep;
    }
    rep.conditions.push_back({"leading eigenvalue real", tri::yes});
    const double lam = (trc + std::sqrt(std::max(disc, 0.0))) / 2.0;
    const tri cii = tri_sign(trc - std::min(2.0, 1.0 + det2),
                             std::max(std::abs(trc), std::abs(trc - std::min(2.0, 1.0 + det2))));
    rep.conditions.push_back({"lambda_1 + lambda_2 > min{2, 1 + lambda_1 lambda_2}", cii});

    // the decisive eigenvector components of the four full turns
    const std::array<std::pair<const char*, double>, 4> ws = {{
        {"w_2 of Mh^(1)", a.at(0, 2) * a.at(1, 0) + a.at(1, 2) * (lam - a.at(0, 0))},
        {"w_3 of Mh^(2)", b.at(0, 1) * b.at(2, 0) + b.at(2, 1) * (lam - b.at(0, 0))},
        {"w_3 of Mh^(5)", g.at(0, 1) * g.at(2, 0) + g.at(2, 1) * (lam - g.at(0, 0))},
        {"w_1 of Mh^(3)", dd.at(0, 1) * dd.at(1, 2) + dd.at(0, 2) * (lam - dd.at(1, 1))},
    }};
    tri ciii = std::min(tri1(-d.theta_t), tri1(-d.nu_t));
    rep.conditions.push_back({"theta_T < 0", tri1(-d.theta_t)});
    rep.conditions.push_back({"nu_T < 0", tri1(-d.nu_t)});
    for (const auto& [name, w] : ws) {
        const tri t = tri1(w);
        rep.conditions.push_back({std::string(name) + " > 0", t});
        ciii = std::min(ciii, t);
    }
    const tri worst = std::min(cii, ciii);
    if (worst == tri::no) {
        rep.classification = Classification::CompletelyUnstable;
        fill_minus_inf(rep);
        return rep;
    }
    if (worst == tri::marginal) {
        rep.classification = Classification::Marginal;
        return rep;
    }
    rep.classification = Classification::FragmentarilyStable;
    rep.warnings.push_back("closed form gives index upper bounds only (sigma_31 <= " +
                           num17(index_term_q(-eb / ea)) + ", others <= " +
                           num17(index_term_w(ea / eb)) +
                           "); exact values require the generic algorithm");
    return rep;
}

}  // namespace

StabilityReport stability_indices_closed_form(const CycleSpec& cycle, const GameParameters& p) {
    if (!p.valid()) throw std::runtime_error("stability: parameters must be positive");
    switch (cycle.family) {
        case CycleFamily::RockToPaper: return closed_form_rock_to_paper(cycle, p);
        case CycleFamily::Star: return closed_form_star(cycle, p);
        case CycleFamily::RSP: return closed_form_rsp(cycle, p);
        case CycleFamily::FourNode: return closed_form_four_node(cycle, p);
    }
    throw std::runtime_error("bad cycle family");
}

bool reports_agree(const StabilityReport& generic, const StabilityReport& closed, double tol) {
    if (generic.classification == Classification::Marginal ||
        closed.classification == Classification::Marginal)
        return true;
    if (generic.classification != closed.classification) return false;
    for (const auto& ci : closed.indices) {
        for (const auto& gi : generic.indices) {
            if (ci.from_node != gi.from_node || ci.to_node != gi.to_node) continue;
            if (std::isinf(ci.value) || std::isinf(gi.value)) {
                if (ci.value != gi.value) return false;
            } else if (std::abs(ci.value - gi.value) >
                       tol * std::max({1.0, std::abs(ci.value), std::abs(gi.value)})) {
                return false;
            }
        }
    }
    return true;
}

RegimeClassification classify_in_as_regime(const GameParameters& p) {
    RegimeClassification out;
    const tri reg = p.as_regime_tri();
    if (reg == tri::no) {
        out.by_family.fill(Classification::Unsupported);
        return out;
    }
    if (reg == tri::marginal) {
        out.by_family.fill(Classification::Marginal);
        return out;
    }
    out.in_regime = true;
    for (const CycleFamily f : {CycleFamily::RockToPaper, CycleFamily::Star, CycleFamily::RSP,
                                CycleFamily::FourNode}) {
        out.by_family[static_cast<size_t>(f)] =
            stability_indices_closed_form(canonical_cycle(f), p).classification;
    }
    return out;
}

std::vector<ExclusionClaim> mutual_exclusion_check(const GameParameters& p) {
    std::array<Classification, 4> cls{};
    for (const CycleFamily f : {CycleFamily::RockToPaper, CycleFamily::Star, CycleFamily::RSP,
                                CycleFamily::FourNode}) {
        cls[static_cast<size_t>(f)] =
            stability_indices_generic(canonical_cycle(f), p).classification;
    }
    auto att = [&](CycleFamily f) { return attracting(cls[static_cast<size_t>(f)]); };
    auto detail = [&]() {
        return "rock-to-paper=" + classification_name(cls[0]) +
               " star=" + classification_name(cls[1]) + " rsp=" + classification_name(cls[2]) +
               " four-node=" + classification_name(cls[3]);
    };
    std::vector<ExclusionClaim> out;
    out.push_back({"at most one five-node cycle attracting",
                   !(att(CycleFamily::RockToPaper) && att(CycleFamily::Star)), detail()});
    out.push_back({"at most one of the three- and four-node cycles attracting",
                   !(att(CycleFamily::RSP) && att(CycleFamily::FourNode)), detail()});
    int odd = 0;
    for (const CycleFamily f : {CycleFamily::RockToPaper, CycleFamily::Star, CycleFamily::RSP})
        if (att(f)) ++odd;
    const bool in_regime = p.as_regime_tri() == tri::yes;
    out.push_back({"in the stability regime at most one odd cycle attracting",
                   !in_regime || odd <= 1, detail()});
    return out;
}

std::vector<ExclusionClaim> lemma_relations_check(const GameParameters& p) {
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    const DerivedConstants d = derived_constants(p);
    const bool reg = p.as_regime_tri() == tri::yes;
    std::vector<ExclusionClaim> out;
    auto imply = [&out](const std::string& name, bool premise, bool conclusion) {
        out.push_back({name, !premise || conclusion, premise ? "active" : "vacuous"});
    };
    imply("regime => delta_T>1, beta_T>0, gamma_T>0", reg,
          d.delta_t > 1 && d.beta_t > 0 && d.gamma_t > 0);
    imply("regime => c_A+c_B > e_A+e_B", reg, ca + cb > ea + eb);
    imply("regime => c_A c_B^3 > e_A e_B^3", reg, ca * cb * cb * cb > ea * eb * eb * eb);
    imply("regime & (alpha_T>0 | theta_T>0 | beta_T<0 | nu_T<0) => c_A e_A < c_B e_B",
          reg && (d.alpha_t > 0 || d.theta_t > 0 || d.beta_t < 0 || d.nu_t < 0),
          ca * ea < cb * eb);
    imply("regime & theta_T>0 & nu_T>0 => c_A^3 e_B < c_B e_A^3",
          reg && d.theta_t > 0 && d.nu_t > 0, ca * ca * ca * eb < cb * ea * ea * ea);
    imply("regime & theta_T<0 & nu_T<0 => c_A^3 e_B > c_B e_A^3",
          reg && d.theta_t < 0 && d.nu_t < 0, ca * ca * ca * eb > cb * ea * ea * ea);
    imply("delta_T>1 & theta_T>0 & nu_T>0 => alpha_T,beta_T,gamma_T,mu_T > 0",
          d.delta_t > 1 && d.theta_t > 0 && d.nu_t > 0,
          d.alpha_t > 0 && d.beta_t > 0 && d.gamma_t > 0 && d.mu_t > 0);
    imply("delta_T>1 & gamma_T<0 & mu_T<0 => alpha_T,beta_T,theta_T,nu_T < 0",
          d.delta_t > 1 && d.gamma_t < 0 && d.mu_t < 0,
          d.alpha_t < 0 && d.beta_t < 0 && d.theta_t < 0 && d.nu_t < 0);
    return out;
}

}  // namespace hetlab
