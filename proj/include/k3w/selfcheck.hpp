#pragma once

// Seeded property suites run by `k3w selfcheck`.

#include <cstdint>
#include <string>
#include <vector>

namespace k3w {

struct SelfcheckOptions {
    std::uint64_t seed = 20061;
    std::size_t iterations = 1000;
    // Corrupts every witness before re-verification; the run must then fail.
    bool inject_fault = false;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string message;  // first failure
};

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& opts);

}  // namespace k3w
