#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace decoupling::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;  // the inequality failed: a bug signal
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvalidModel = 3;

enum class Format { text, json };

struct RunConfig {
    std::string command;  // constants | validate | verify | sharpness | report
    std::string spec_path;
    std::optional<std::string> expansion_path;
    int degree_max = 4;
    std::int64_t samples = 100000;
    int trials = 200;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    Format format = Format::text;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string output;  // report document (stdout)
    std::string error;   // diagnostics (stderr)
};

/// Execute one command; never throws for input-level failures, which are
/// mapped onto the exit-code contract instead.
RunResult run(const RunConfig& config);

/// Full argv-level entry point: parse flags, run, print.
int main_entry(int argc, const char* const* argv);

}  // namespace decoupling::cli
