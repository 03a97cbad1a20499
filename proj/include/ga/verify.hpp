#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ga/identities.hpp"

namespace ga {

struct VerifyOptions {
    std::uint64_t seed = 42;
    int trials = 100;
    int nmax = 6;
    Tolerance tol;
    /// Test-only hook: flips the sign of one operand in the first checker
    /// so the harness can prove it reports failures.
    bool inject_fault = false;
};

struct VerifyLine {
    std::string name;
    int runs = 0;
    int failures = 0;
    double max_residual = 0.0;
    std::string first_failure_digest;
};

struct VerifySummary {
    std::vector<VerifyLine> lines;
    bool all_passed = true;
};

/// Runs every identity checker over seeded random blade pairs (plus
/// constructed pairs where a checker has preconditions). Deterministic in
/// (seed, trials, nmax).
VerifySummary run_verification(const VerifyOptions& options);

std::string format_verify_text(const VerifySummary& summary);
std::string format_verify_json(const VerifySummary& summary,
                               const VerifyOptions& options);

} // namespace ga
