#pragma once
// Self-verification of the closed-form layer against the multiplication
// oracle, plus regression checks for the handful of single-entry deviations
// between the printed product tables and what the products actually are
// (the corrected entries ship in closed_form_product; the checks here prove
// both that the corrections match the oracle and that the uncorrected
// entries do not).
//
// run_verification draws random positive parameter sets, or evaluates a
// single caller-supplied point, and reports one pass/fail item per check.
// A nonzero corrupt_label perturbs that closed form before comparison; it
// exists so the negative-control test can prove the oracle has teeth.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetlab/model.hpp"

namespace hetlab {

struct VerifyItem {
    std::string name;
    bool pass = false;
    double max_err = 0.0;
    std::string note;
};

struct VerifyReport {
    int draws = 0;
    std::uint64_t seed = 0;
    std::vector<VerifyItem> items;

    bool all_pass() const;
};

VerifyReport run_verification(int n_random, std::uint64_t seed,
                              const std::string& corrupt_label = "",
                              std::optional<GameParameters> at = std::nullopt);

}  // namespace hetlab
