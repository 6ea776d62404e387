#pragma once

// Batch-verifier front end. Every command is a library function producing a
// JSON report plus an exit code, so the executable in tools/ is a thin shell
// around dispatch().

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hasse::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchema = 1;

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct Outcome {
    nlohmann::json report;
    int exit_code = kExitPass;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct ShaScanOptions {
    std::uint32_t p = 3;
    std::vector<std::string> modules;  // empty: all five
    std::string scope = "all";
    std::uint64_t seed = kDefaultSeed;
};
Outcome sha_scan(const ShaScanOptions& o);

struct SerreOptions {
    std::uint32_t p = 3;
    std::optional<std::vector<std::string>> modules;  // unset: all five
};
Outcome serre_check(const SerreOptions& o);

struct GroupOptions {
    std::uint32_t p = 3;
    std::vector<std::string> gens;  // "a,b,c,d" row-major
    std::vector<std::string> modules;
};
Outcome classify(const GroupOptions& o);
Outcome cohomology(const GroupOptions& o);

struct PrimeScanOptions {
    std::string curves_path;
    std::uint32_t bound = 100;
    int degree = 1;
};
Outcome prime_scan(const PrimeScanOptions& o);

struct ApproximateOptions {
    std::string curves_path;
    std::string label;
    std::uint32_t p = 5;
    std::uint64_t seed = kDefaultSeed;
    int depth_max = 16;
    bool pair = false;
};
Outcome approximate(const ApproximateOptions& o);

/// Re-runs every sha row, serre row, prime verdict and certificate found in a
/// report.
Outcome verify(const nlohmann::json& report);

/// SHA-256 hex digest.
std::string sha256_hex(const std::string& data);

/// Full command line (argv[0] excluded). Writes the report to `out` (or to
/// the --out file) and diagnostics to `err`; returns the exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hasse::cli
