#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kleinlens::verify {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    bool pass = true;
    std::string first_failure;
    double ms = 0;
};

struct VerifyOptions {
    std::int64_t max_n = 20;
    std::int64_t max_p = 200;
    std::int64_t cap = 20000;
    std::uint32_t mesh_resolution = 64;
    std::uint64_t seed = 0x6b6c656e73ULL;
    /// Test-only negative control: corrupts one expected value so the sweep
    /// must report a failure.
    bool inject_fault = false;
};

/// Runs every module invariant sweep up to the given bounds, in a fixed
/// order; each suite reports its case count and first counterexample.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

} // namespace kleinlens::verify
