#include "hetlab/transition.hpp"

#include <cmath>
#include <stdexcept>

namespace hetlab {

Mat3 operator*(const Mat3& lhs, const Mat3& rhs) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += lhs.at(r, k) * rhs.at(k, c);
            out.at(r, c) = s;
        }
    return out;
}

TransitionMatrix compose(const TransitionMatrix& next, const TransitionMatrix& acc) {
    if (acc.to_node != next.from_node)
        throw std::runtime_error("compose: section mismatch, cannot apply " + next.label +
                                 " after " + acc.label);
    TransitionMatrix out;
    out.m = next.m * acc.m;
    out.from_node = acc.from_node;
    out.to_node = next.to_node;
    return out;
}

TransitionMatrix basic_matrix(BasicKind kind, const GameParameters& p) {
    if (!p.valid()) throw std::runtime_error("basic_matrix: parameters must be strictly positive");
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    TransitionMatrix t;
    switch (kind) {
        case BasicKind::M1:
        case BasicKind::Mhat1:
            t.m.a = {cb / ea, 0, 0, ca / ea, 0, 1, -eb / ea, 1, 0};
            t.label = kind == BasicKind::M1 ? "M_1" : "Mh_1";
            break;
        case BasicKind::M2:
            t.m.a = {cb / ea, 0, 1, ca / ea, 0, 0, -eb / ea, 1, 0};
            t.label = "M_2";
            break;
        case BasicKind::M3:
        case BasicKind::Mhat2:
            t.m.a = {0, ca / eb, 0, 1, -ea / eb, 0, 0, cb / eb, 1};
            t.label = kind == BasicKind::M3 ? "M_3" : "Mh_2";
            break;
        case BasicKind::M4:
        case BasicKind::Mhat3:
        case BasicKind::Mhat5:
            t.m.a = {0, ca / eb, 1, 1, -ea / eb, 0, 0, cb / eb, 0};
            t.label = kind == BasicKind::M4 ? "M_4" : (kind == BasicKind::Mhat3 ? "Mh_3" : "Mh_5");
            break;
    }
    return t;
}

namespace {

BasicKind kind_for(ConnType in, ConnType out) {
    if (in == ConnType::B && out == ConnType::A) return BasicKind::M1;
    if (in == ConnType::A && out == ConnType::A) return BasicKind::M2;
    if (in == ConnType::A && out == ConnType::B) return BasicKind::M3;
    return BasicKind::M4;
}

std::string step_label(const CycleSpec& cycle, int node_xi) {
    // The two five-node cycles repeat a single basic matrix, and the printed
    // tables name their chains as powers of it; the small cycles name each
    // step after the node it acts at.
    if (cycle.family == CycleFamily::RockToPaper) return "M_2";
    if (cycle.family == CycleFamily::Star) return "M_4";
    const bool hat = cycle.family == CycleFamily::FourNode;
    return (hat ? "Mh_" : "M_") + std::to_string(node_xi + 1);
}

}  // namespace

TransitionMatrix step_matrix(const CycleSpec& cycle, int pos, const GameParameters& p) {
    const int m = cycle.size();
    if (pos < 0 || pos >= m) throw std::runtime_error("step_matrix: position out of range");
    const ConnType in = cycle.conns[(pos + m - 1) % m];
    const ConnType out = cycle.conns[pos];
    TransitionMatrix t = basic_matrix(kind_for(in, out), p);
    t.label = step_label(cycle, cycle.nodes[pos]);
    t.from_node = cycle.nodes[pos];
    t.to_node = cycle.nodes[(pos + 1) % m];
    return t;
}

std::vector<TransitionMatrix> product_chain(const CycleSpec& cycle, int j, const GameParameters& p) {
    const int m = cycle.size();
    if (j < 0 || j >= m) throw std::runtime_error("product_chain: start position out of range");
    std::vector<TransitionMatrix> out;
    out.reserve(m);
    TransitionMatrix acc = step_matrix(cycle, j, p);
    const bool powers =
        cycle.family == CycleFamily::RockToPaper || cycle.family == CycleFamily::Star;
    const bool hat = cycle.family == CycleFamily::FourNode;
    const std::string base = hat ? "Mh" : "M";
    const int start_xi = cycle.nodes[j];
    out.push_back(acc);
    for (int k = 1; k < m; ++k) {
        const int pos = (j + k) % m;
        TransitionMatrix step = step_matrix(cycle, pos, p);
        acc = compose(step, acc);
        if (k == m - 1) {
            acc.label = base + "^(" + std::to_string(start_xi + 1) + ")";
        } else if (powers) {
            acc.label = "(" + step.label + ")^" + std::to_string(k + 1);
        } else {
            acc.label = base + "_(" + std::to_string(cycle.nodes[pos] + 1) + "," +
                        std::to_string(start_xi + 1) + ")";
        }
        out.push_back(acc);
    }
    if (powers) out.back().label = "(" + out.front().label + ")^" + std::to_string(m);
    return out;
}

std::vector<std::array<double, 3>> index_rows(const CycleSpec& cycle, int j, const GameParameters& p) {
    std::vector<std::array<double, 3>> rows;
    for (const auto& t : product_chain(cycle, j, p))
        for (int r = 0; r < 3; ++r) rows.push_back(t.m.row(r));
    return rows;
}

// ---------------------------------------------------------------------------
// Closed forms.  Entries are the explicit rational functions for every
// accumulated product; three single-entry misprints in the printed tables
// are corrected here (the multiplication oracle arbitrates; see verify).

std::vector<std::string> closed_form_labels() {
    return {
        "(M_2)^1",  "(M_2)^2",  "(M_2)^3",  "(M_2)^4",  "(M_2)^5",
        "(M_4)^1",  "(M_4)^2",  "(M_4)^3",  "(M_4)^4",  "(M_4)^5",
        "M_(2,1)",  "M^(1)",    "M_(3,2)",  "M^(2)",    "M_(1,3)",  "M^(3)",
        "Mh_(2,1)", "Mh_(5,1)", "Mh^(1)",   "Mh_(5,2)", "Mh_(3,2)", "Mh^(2)",
        "Mh_(3,5)", "Mh_(1,5)", "Mh^(5)",   "Mh_(1,3)", "Mh_(2,3)", "Mh^(3)",
    };
}

TransitionMatrix closed_form_product(const std::string& label, const GameParameters& p) {
    if (!p.valid())
        throw std::runtime_error("closed_form_product: parameters must be strictly positive");
    const double ca = p.c_a, cb = p.c_b, ea = p.e_a, eb = p.e_b;
    const double ea2 = ea * ea, ea3 = ea2 * ea, ea4 = ea3 * ea, ea5 = ea4 * ea;
    const double eb2 = eb * eb, eb3 = eb2 * eb, eb4 = eb3 * eb, eb5 = eb4 * eb;
    const double dT = ca * ca * cb / (ea2 * eb);
    const double aT = cb * cb / ea2 - ca * cb / (eb * ea) - eb / ea;
    const double bT = cb * cb * ca / (ea2 * eb) - eb * cb / ea2 + ca / ea;
    const double gT = ca * ca * ca / (ea2 * eb) + cb * ca / (eb * ea) - eb / ea;
    const double tT = -ca * ca / ea2 + cb / ea - ca / eb;
    const double mT = cb * cb * ca / (ea2 * eb) - ca / ea - ea / eb;
    const double nT = -cb * ca / ea2 + ca * ca / (ea * eb) + cb / eb;

    TransitionMatrix t;
    t.label = label;
    auto set = [&t](std::array<double, 9> v) { t.m.a = v; };

    if (label == "(M_2)^1") {
        set({cb / ea, 0, 1, ca / ea, 0, 0, -eb / ea, 1, 0});
    } else if (label == "(M_2)^2") {
        set({cb * cb / ea2 - eb / ea, 1, cb / ea,
             ca * cb / ea2, 0, ca / ea,
             -eb * cb / ea2 + ca / ea, 0, -eb / ea});
    } else if (label == "(M_2)^3") {
        set({cb * cb * cb / ea3 - 2 * eb * cb / ea2 + ca / ea, cb / ea, cb * cb / ea2 - eb / ea,
             cb * cb * ca / ea3 - ca * eb / ea2, ca / ea, ca * cb / ea2,
             -cb * cb * eb / ea3 + (ca * cb + eb2) / ea2, -eb / ea, -eb * cb / ea2 + ca / ea});
    } else if (label == "(M_2)^4") {
        set({cb * cb * cb * cb / ea4 - 3 * cb * cb * eb / ea3 + (2 * ca * cb + eb2) / ea2,
             cb * cb / ea2 - eb / ea,
             cb * cb * cb / ea3 - 2 * eb * cb / ea2 + ca / ea,
             cb * cb * cb * ca / ea4 - 2 * ca * cb * eb / ea3 + ca * ca / ea2,
             ca * cb / ea2,
             cb * cb * ca / ea3 - ca * eb / ea2,
             -cb * cb * cb * eb / ea4 + (cb * cb * ca + 2 * eb2 * cb) / ea3 - 2 * ca * eb / ea2,
             -eb * cb / ea2 + ca / ea,
             -cb * cb * eb / ea3 + (ca * cb + eb2) / ea2});
    } else if (label == "(M_2)^5") {
        const double cb2 = cb * cb, cb3 = cb2 * cb, cb4 = cb3 * cb, cb5 = cb4 * cb;
        set({cb5 / ea5 - 4 * cb3 * eb / ea4 + (3 * cb2 * ca + 3 * eb2 * cb) / ea3 - 2 * ca * eb / ea2,
             cb3 / ea3 - 2 * eb * cb / ea2 + ca / ea,
             cb4 / ea4 - 3 * cb2 * eb / ea3 + (2 * ca * cb + eb2) / ea2,
             cb4 * ca / ea5 - 3 * cb2 * ca * eb / ea4 + (2 * ca * ca * cb + eb2 * ca) / ea3,
             cb2 * ca / ea3 - ca * eb / ea2,
             cb3 * ca / ea4 - 2 * ca * cb * eb / ea3 + ca * ca / ea2,
             -cb4 * eb / ea5 + (cb3 * ca + 3 * cb2 * eb2) / ea4 - (4 * ca * cb * eb + eb3) / ea3 +
                 ca * ca / ea2,
             // corrected: the printed table's second entry of this row has
             // c_A where the product requires e_B
             -cb2 * eb / ea3 + (ca * cb + eb2) / ea2,
             -cb3 * eb / ea4 + (cb2 * ca + 2 * eb2 * cb) / ea3 - 2 * ca * eb / ea2});
    } else if (label == "(M_4)^1") {
        set({0, ca / eb, 1, 1, -ea / eb, 0, 0, cb / eb, 0});
    } else if (label == "(M_4)^2") {
        set({ca / eb, -ca * ea / eb2 + cb / eb, 0,
             -ea / eb, ea2 / eb2 + ca / eb, 1,
             cb / eb, -cb * ea / eb2, 0});
    } else if (label == "(M_4)^3") {
        set({-ca * ea / eb2 + cb / eb, ea2 * ca / eb3 + ca * ca / eb2 - cb * ea / eb2, ca / eb,
             ea2 / eb2 + ca / eb, -ea3 / eb3 - 2 * ca * ea / eb2 + cb / eb, -ea / eb,
             -cb * ea / eb2, ea2 * cb / eb3 + cb * ca / eb2, cb / eb});
    } else if (label == "(M_4)^4") {
        set({ea2 * ca / eb3 + (ca * ca - cb * ea) / eb2,
             -ea3 * ca / eb4 + (ea2 * cb - 2 * ca * ca * ea) / eb3 + 2 * cb * ca / eb2,
             -ca * ea / eb2 + cb / eb,
             -ea3 / eb3 - 2 * ca * ea / eb2 + cb / eb,
             ea4 / eb4 + 3 * ea2 * ca / eb3 + (ca * ca - 2 * cb * ea) / eb2,
             ea2 / eb2 + ca / eb,
             ea2 * cb / eb3 + cb * ca / eb2,
             -ea3 * cb / eb4 - 2 * cb * ea * ca / eb3 + cb * cb / eb2,
             -cb * ea / eb2});
    } else if (label == "(M_4)^5") {
        const double ca2 = ca * ca, ca3 = ca2 * ca;
        set({-ea3 * ca / eb4 + (ea2 * cb - 2 * ca2 * ea) / eb3 + 2 * cb * ca / eb2,
             ea4 * ca / eb5 + (3 * ca2 * ea2 - ea3 * cb) / eb4 + (ca3 - 4 * cb * ea * ca) / eb3 +
                 cb * cb / eb2,
             ea2 * ca / eb3 + (ca2 - cb * ea) / eb2,
             ea4 / eb4 + 3 * ea2 * ca / eb3 + (ca2 - 2 * cb * ea) / eb2,
             -ea5 / eb5 - 4 * ea3 * ca / eb4 + (3 * ea2 * cb - 3 * ca2 * ea) / eb3 + 2 * cb * ca / eb2,
             -ea3 / eb3 - 2 * ca * ea / eb2 + cb / eb,
             -ea3 * cb / eb4 - 2 * cb * ea * ca / eb3 + cb * cb / eb2,
             ea4 * cb / eb5 + 3 * ea2 * ca * cb / eb4 + (ca2 * cb - 2 * cb * cb * ea) / eb3,
             ea2 * cb / eb3 + cb * ca / eb2});
    } else if (label == "M_(2,1)") {
        set({cb * cb / ea2 - eb / ea, 1, 0,
             ca * cb / ea2, 0, 0,
             -eb * cb / ea2 + ca / ea, 0, 1});
    } else if (label == "M^(1)") {
        set({dT, 0, 0, aT, 1, 0, bT, 0, 1});
    } else if (label == "M_(3,2)") {
        set({ca * ca / (eb * ea), 0, 0,
             cb / ea - ca / eb, 0, 1,
             cb * ca / (eb * ea) - eb / ea, 1, 0});
    } else if (label == "M^(2)") {
        set({dT, 0, 0, gT, 1, 0, tT, 0, 1});
    } else if (label == "M_(1,3)") {
        set({0, cb * ca / (eb * ea), 0,
             0, ca * ca / (eb * ea) + cb / eb, 1,
             1, -ca / ea - ea / eb, 0});
    } else if (label == "M^(3)") {
        set({1, mT, 0, 0, dT, 0, 0, nT, 1});
    } else if (label == "Mh_(2,1)") {
        set({ca * ca / (eb * ea), 0, ca / eb,
             cb / ea - ca / eb, 0, -ea / eb,
             cb * ca / (eb * ea) - eb / ea, 1, cb / eb});
    } else if (label == "Mh_(5,1)") {
        set({-ca * ca / eb2 + 2 * cb * ca / (eb * ea) - eb / ea, 1, -ca * ea / eb2 + cb / eb,
             ca * ea / eb2 + ca * ca / (eb * ea) - cb / eb, 0, ea2 / eb2 + ca / eb,
             cb * cb / (eb * ea) - cb * ca / eb2, 0, -cb * ea / eb2});
    } else if (label == "Mh^(1)") {
        const double ca2 = ca * ca;
        set({ca2 * ea / eb3 + ca2 * ca / (eb2 * ea) - 2 * cb * ca / eb2 + cb * cb / (eb * ea),
             0,
             ea2 * ca / eb3 + (ca2 - cb * ea) / eb2,
             -ea2 * ca / eb3 - (2 * ca2 - cb * ea) / eb2 + 2 * cb * ca / (eb * ea) - eb / ea,
             1,
             -ea3 / eb3 - 2 * ca * ea / eb2 + cb / eb,
             ca * ea * cb / eb3 + ca2 * cb / (eb2 * ea) - cb * cb / eb2,
             0,
             ea2 * cb / eb3 + cb * ca / eb2});
    } else if (label == "Mh_(5,2)") {
        set({ca / eb, -ca * ea / eb2 + cb / eb, 1,
             -ea / eb, ea2 / eb2 + ca / eb, 0,
             // corrected: printed with a positive sign; the product gives
             // the same negative entry as the matching square table
             cb / eb, -cb * ea / eb2, 0});
    } else if (label == "Mh_(3,2)") {
        // corrected first entry: printed c_A/e_B where the product gives c_B/e_B
        set({-ca * ea / eb2 + cb / eb, ea2 * ca / eb3 + (ca * ca - cb * ea) / eb2, 0,
             ea2 / eb2 + ca / eb, -ea3 / eb3 - 2 * ca * ea / eb2 + cb / eb, 1,
             -cb * ea / eb2, cb * ea2 / eb3 + cb * ca / eb2, 0});
    } else if (label == "Mh^(2)") {
        const double ca2 = ca * ca;
        set({-cb * ca / eb2 + cb * cb / (eb * ea),
             ea * cb * ca / eb3 + ca2 * cb / (eb2 * ea) - cb * cb / eb2,
             0,
             -(ca2 + cb * ea) / eb2 + cb * ca / (eb * ea),
             (ca2 * ea + ea2 * cb) / eb3 + ca2 * ca / (eb2 * ea),
             0,
             ea2 / eb2 + 2 * ca / eb - cb / ea,
             -ea3 / eb3 - 3 * ca * ea / eb2 - ca2 / (eb * ea) + 2 * cb / eb,
             1});
    } else if (label == "Mh_(3,5)") {
        set({ca / eb, -ca * ea / eb2 + cb / eb, 0,
             -ea / eb, ea2 / eb2 + ca / eb, 1,
             cb / eb, -cb * ea / eb2, 0});
    } else if (label == "Mh_(1,5)") {
        set({cb * ca / (eb * ea), -cb * ca / eb2 + cb * cb / (eb * ea), 0,
             ca * ca / (eb * ea) + cb / eb, -(ca * ca + cb * ea) / eb2 + cb * ca / (eb * ea), 0,
             -ca / ea - ea / eb, ea2 / eb2 + 2 * ca / eb - cb / ea, 1});
    } else if (label == "Mh^(5)") {
        const double ca2 = ca * ca, cb2 = cb * cb;
        set({ca2 * ca / (eb2 * ea) + cb * ca / eb2,
             -(ca2 * ca + ea * cb * ca) / eb3 + ca2 * cb / (eb2 * ea),
             0,
             -(ca2 + cb * ea) / eb2 + cb * ca / (eb * ea),
             (ca2 * ea + ea2 * cb) / eb3 - 2 * cb * ca / eb2 + cb2 / (eb * ea),
             0,
             ca2 * cb / (eb2 * ea) + cb2 / eb2 - ca / ea - ea / eb,
             -(ca2 * cb + cb2 * ea) / eb3 + cb2 * ca / (eb2 * ea) + ea2 / eb2 + 2 * ca / eb - cb / ea,
             1});
    } else if (label == "Mh_(1,3)") {
        set({0, cb * ca / (eb * ea), cb / ea,
             0, ca * ca / (eb * ea) + cb / eb, ca / ea,
             1, -ca / ea - ea / eb, -eb / ea});
    } else if (label == "Mh_(2,3)") {
        const double ca2 = ca * ca;
        set({0, ca2 * ca / (eb2 * ea) + cb * ca / eb2, ca2 / (eb * ea),
             0, -(ca2 + cb * ea) / eb2 + cb * ca / (eb * ea), cb / ea - ca / eb,
             1, ca2 * cb / (eb2 * ea) + cb * cb / eb2 - ca / ea - ea / eb,
             cb * ca / (eb * ea) - eb / ea});
    } else if (label == "Mh^(3)") {
        const double ca2 = ca * ca, cb2 = cb * cb;
        set({1,
             -(ca2 * ca + ea * cb * ca) / eb3 + 2 * ca2 * cb / (eb2 * ea) + cb2 / eb2 - ca / ea -
                 ea / eb,
             -ca2 / eb2 + 2 * cb * ca / (eb * ea) - eb / ea,
             0,
             (ca2 * ea + ea2 * cb) / eb3 + ca2 * ca / (eb2 * ea),
             ca * ea / eb2 + ca2 / (eb * ea) - cb / eb,
             0,
             -(ca2 * cb + cb2 * ea) / eb3 + cb2 * ca / (eb2 * ea),
             -cb * ca / eb2 + cb2 / (eb * ea)});
    } else {
        throw std::runtime_error("closed_form_product: unknown label " + label);
    }
    return t;
}

}  // namespace hetlab
