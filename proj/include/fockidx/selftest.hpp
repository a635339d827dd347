#pragma once

#include "fockidx/algebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fockidx {

struct CheckResult {
    std::string module;
    std::string name;
    double value = 0.0;      // measured residual (or failure count)
    double tolerance = 0.0;
    bool passed = false;
};

struct SelftestOptions {
    GridSpec grid{4, 40};
    std::uint64_t seed = 20240601;
    int random_cases = 5;
};

/// Runs the property suite over all modules. Deterministic for a fixed seed.
/// Requires S >= 20.
std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

}  // namespace fockidx
