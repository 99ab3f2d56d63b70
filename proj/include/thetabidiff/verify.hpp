#pragma once

#include <string>
#include <vector>

#include "thetabidiff/io.hpp"

namespace tb {

struct CheckResult {
    std::string name;
    std::string identity;  // which mathematical statement is exercised
    double measured = 0;
    double tolerance = 0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::uint64_t seed = 0;
    double eps_value = 0;
    double eps_jet = 0;

    bool all_pass() const;
    // Deterministic rendering: equal configs produce byte-identical text.
    std::string render() const;
};

// Runs every property suite at its pinned tolerance.
VerifyReport verify_all(const RunConfig& config);

} // namespace tb
