#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sigmak/solver.hpp"

namespace sigmak::cli {

enum ExitCode : int { Ok = 0, Usage = 1, NotConverged = 2, Negative = 3 };

/// Invalid configuration or command line; maps to ExitCode::Usage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int n = 3;
    int k = 2;
    double beta = 0.0;  ///< resolved; "beta0" is replaced by beta0(n, k)
    WarpFamily family = WarpFamily::Perturbed;
    double amplitude = 0.0;
    double T = 16.0;
    int N = 4000;
    SolverParams solver;
    std::filesystem::path output_dir = ".";
};

/// Parses and validates a JSON config document. Unknown keys are rejected by
/// name. SIGMAK_OUTPUT_DIR, when set, replaces output_dir.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigmak::cli
