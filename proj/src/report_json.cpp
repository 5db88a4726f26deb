#include "hetlab/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#include "hetlab/network.hpp"

namespace hetlab {

namespace {

using nlohmann::json;

json jnum(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

const char* tri_str(tri t) {
    switch (t) {
        case tri::yes: return "yes";
        case tri::no: return "no";
        default: return "marginal";
    }
}

json params_json(const GameParameters& p) {
    return {{"c_a", p.c_a}, {"c_b", p.c_b}, {"e_a", p.e_a}, {"e_b", p.e_b}};
}

std::vector<int> one_based(const std::vector<int>& nodes) {
    std::vector<int> out;
    out.reserve(nodes.size());
    for (int v : nodes) out.push_back(v + 1);
    return out;
}

json report_body(const StabilityReport& rep) {
    json idx = json::array();
    for (const StabilityIndex& ix : rep.indices)
        idx.push_back({{"from", ix.from_node + 1},
                       {"to", ix.to_node + 1},
                       {"sigma", jnum(ix.value)}});
    json conds = json::array();
    for (const ConditionResult& c : rep.conditions)
        conds.push_back({{"name", c.name}, {"state", tri_str(c.state)}});
    return {{"cycle", rep.cycle.name()},
            {"nodes", one_based(rep.cycle.nodes)},
            {"method", rep.method},
            {"classification", classification_name(rep.classification)},
            {"indices", idx},
            {"conditions", conds},
            {"warnings", rep.warnings},
            {"minus_infinity_certified", rep.minus_infinity_certified}};
}

}  // namespace

std::string stability_report_json(const StabilityReport& rep, int indent) {
    return report_body(rep).dump(indent);
}

std::string classify_json(const GameParameters& p, int indent, bool* all_agree_out) {
    json doc;
    doc["parameters"] = params_json(p);
    doc["regime"] = {{"state", tri_str(p.as_regime_tri())},
                     {"in_regime", p.as_regime()}};

    const NetworkStability ns = check_network_asymptotic_stability(p);
    doc["network"] = {{"stable_proven", ns.stable_proven},
                      {"via", ns.via},
                      {"margin", jnum(ns.margin)}};
    const ExistenceReport ex = check_existence(rspls_system(p));
    doc["network"]["exists"] = ex.network_exists;

    bool all_agree = true;
    const RegimeClassification rc = classify_in_as_regime(p);
    json cycles = json::array();
    for (int f = 0; f < 4; ++f) {
        const CycleSpec cyc = canonical_cycle(static_cast<CycleFamily>(f));
        const StabilityReport gen = stability_indices_generic(cyc, p);
        const StabilityReport clo = stability_indices_closed_form(cyc, p);
        const bool agree = reports_agree(gen, clo);
        all_agree = all_agree && agree;
        cycles.push_back({{"cycle", cyc.name()},
                          {"regime_view", classification_name(rc.by_family[f])},
                          {"generic", report_body(gen)},
                          {"closed_form", report_body(clo)},
                          {"agree", agree}});
    }
    doc["cycles"] = cycles;
    doc["agree"] = all_agree;
    if (all_agree_out) *all_agree_out = all_agree;
    return doc.dump(indent);
}

std::string indices_json(const GameParameters& p, int indent) {
    json doc;
    doc["parameters"] = params_json(p);
    json arr = json::array();
    for (const CycleSpec& cyc : elementary_cycles())
        arr.push_back(report_body(stability_indices_generic(cyc, p)));
    doc["cycles"] = arr;
    return doc.dump(indent);
}

std::string verify_report_json(const VerifyReport& rep, int indent) {
    json doc;
    doc["draws"] = rep.draws;
    doc["seed"] = rep.seed;
    doc["all_pass"] = rep.all_pass();
    json items = json::array();
    for (const VerifyItem& it : rep.items)
        items.push_back({{"name", it.name},
                         {"pass", it.pass},
                         {"max_err", jnum(it.max_err)},
                         {"note", it.note}});
    doc["items"] = items;
    return doc.dump(indent);
}

std::string verify_report_text(const VerifyReport& rep) {
    std::string out;
    int k = 0;
    for (const VerifyItem& it : rep.items) {
        char head[64];
        std::snprintf(head, sizeof head, "item %2d: %s  ", ++k,
                      it.pass ? "PASS" : "FAIL");
        out += head;
        out += it.name;
        if (it.max_err > 0) {
            char err[48];
            std::snprintf(err, sizeof err, "  (max err %.3g)", it.max_err);
            out += err;
        }
        if (!it.note.empty()) out += "\n         " + it.note;
        out += "\n";
    }
    out += rep.all_pass() ? "all checks passed\n" : "SOME CHECKS FAILED\n";
    return out;
}

std::string tube_study_json(const TubeStudy& study, int indent) {
    json doc;
    doc["parameters"] = params_json(study.params);
    doc["cycle"] = study.cycle.name();
    doc["nodes"] = one_based(study.cycle.nodes);
    doc["n"] = study.n;
    doc["delta"] = study.delta;
    doc["eta"] = study.eta;
    doc["seed"] = study.seed;
    doc["wins"] = study.wins;
    doc["stay_fail"] = study.stay_fail;
    doc["none"] = study.none;
    doc["attracted"] = study.attracted;
    doc["sampled_rotation"] = study.sampled_rotation;
    doc["fraction"] = study.fraction(cycle_family_name(study.cycle.family));
    json per = json::array();
    for (const ShadowResult& s : study.per_sample) {
        json e = {{"qualified", s.qualified}};
        if (s.qualified) {
            e["family"] = cycle_family_name(s.family);
            e["rotation"] = s.rotation;
            e["nodes"] = one_based(s.nodes);
            e["run"] = s.run;
            e["laps"] = s.laps;
            e["stay_ok"] = s.stay_ok;
            e["stay_dmax"] = jnum(s.stay_dmax);
            e["absorbed_certified"] = s.absorbed_certified;
        }
        per.push_back(e);
    }
    doc["per_sample"] = per;
    return doc.dump(indent);
}

std::string network_attraction_json(const NetworkAttraction& na, int indent) {
    json doc;
    doc["parameters"] = params_json(na.params);
    doc["n"] = na.n;
    doc["approached"] = na.approached;
    doc["tol"] = na.tol;
    doc["fraction"] = na.fraction();
    json d = json::array();
    for (double v : na.final_distances) d.push_back(jnum(v));
    doc["final_distances"] = d;
    return doc.dump(indent);
}

std::string itinerary_json(const std::vector<Visit>& visits, int indent) {
    json arr = json::array();
    for (const Visit& v : visits)
        arr.push_back({{"node", v.node + 1}, {"entry", v.entry}, {"dwell", v.dwell}});
    return arr.dump(indent);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fputs("t,x1,x2,x3,x4,x5\n", f);
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        const Point5& x = traj.x[k];
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.t[k], x[0],
                     x[1], x[2], x[3], x[4]);
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
}

}  // namespace hetlab
