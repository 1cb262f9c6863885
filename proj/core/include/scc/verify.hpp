#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scc::verify {

struct SuiteResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    double worst_residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Property suites mirroring the per-module invariants.  Known names:
/// cocycle-identity, bound, integer-class, sigma, cover, current, surface,
/// obstruction, all.  Throws invalid_input for an unknown suite.
std::vector<SuiteResult> run(const std::string& suite, std::uint64_t seed, int trials);

bool all_pass(const std::vector<SuiteResult>& results);

}  // namespace scc::verify
