#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wittenlab::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kRefinement = 2,
    kVerifyFailed = 3,
};

enum class OutputFormat { csv, json };

struct RunConfig {
    /// Path to a JSON profile descriptor; verify falls back to gaussian(1, 1).
    std::string profile_path;
    int n = 8;
    double nu_max = 12.0;
    double nu_step = 0.1;
    std::size_t nodes = 400;
    double tail_eps = 1e-12;
    std::size_t modes = 1024;
    /// Empty: write to stdout (no sidecar).
    std::string out;
    OutputFormat format = OutputFormat::csv;

    // ssf-2d
    bool constant_input = false;
    double lambda_min = 0.1;
    double lambda_max = 100.0;
    std::size_t lambda_count = 31;

    // witten
    std::vector<int> n_schedule{2, 4, 8, 16, 32};
    std::size_t lambda_steps = 8;
};

int cmd_ssf1d(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_ssf2d(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_witten(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11), applies --threads / WITTENLAB_THREADS and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wittenlab::cli
