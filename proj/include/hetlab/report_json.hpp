#pragma once
// JSON / CSV serialization of the analysis products.  Schemas are documented
// in the README and kept stable; index values that are +-inf are encoded as
// the strings "inf" / "-inf" because JSON numbers cannot carry them.

#include <string>
#include <vector>

#include "hetlab/model.hpp"
#include "hetlab/simulate.hpp"
#include "hetlab/stability.hpp"
#include "hetlab/verify.hpp"

namespace hetlab {

// Single-report document (method, classification, indices, conditions).
std::string stability_report_json(const StabilityReport& rep, int indent = 2);

// The classify document: parameters, regime, network-stability certificate,
// and for each cycle family the generic and closed-form reports side by side.
// When all_agree is given it receives the overall agreement verdict.
std::string classify_json(const GameParameters& p, int indent = 2,
                          bool* all_agree = nullptr);

// Generic index tables for all twelve elementary cycles.
std::string indices_json(const GameParameters& p, int indent = 2);

std::string verify_report_json(const VerifyReport& rep, int indent = 2);
// One "item N: PASS/FAIL  name  (max err ...)" line per item.
std::string verify_report_text(const VerifyReport& rep);

std::string tube_study_json(const TubeStudy& study, int indent = 2);
std::string network_attraction_json(const NetworkAttraction& na, int indent = 2);
std::string itinerary_json(const std::vector<Visit>& visits, int indent = 2);

// Trajectory samples as CSV with header t,x1,x2,x3,x4,x5.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace hetlab
