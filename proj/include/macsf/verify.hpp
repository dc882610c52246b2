#pragma once

#include <string>
#include <vector>

#include "macsf/config.hpp"

namespace macsf {

struct ClaimResult {
    std::string name;
    enum class Status { Pass, Fail, Skipped } status = Status::Skipped;
    double measured = 0.0;
    double bound = 0.0;
};

// "CLAIM <name> PASS|FAIL|SKIPPED <measured> <bound>"
std::string claim_line(const ClaimResult& c);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<ClaimResult> parts;
};

// The fixed verification battery: exact-circle oracles, coefficient identity,
// anisotropy bounds, convexity and maximum-principle monitors, containment,
// area identity, collapse-time bound, normalized convergence, reduction
// equivalence and the grid-convergence self check.
std::vector<CriterionResult> builtin_criteria();

// Property checks evaluated on the scenario described by cfg. Checks whose
// hypotheses the scenario violates come back Skipped.
std::vector<ClaimResult> scenario_claims(const RunConfig& cfg);

bool all_passed(const std::vector<ClaimResult>& claims);

}  // namespace macsf
