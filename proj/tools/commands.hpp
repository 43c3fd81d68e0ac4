#pragma once

#include <optional>
#include <string>

namespace diracred::cli {

inline constexpr const char* tool_version = "0.1.0";

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<double> tol;  // overrides the command's primary tolerance
    bool spin_orbit = false;
    bool bilayer = false;
};

// Runs one subcommand (spectrum, modes, assemble, detect, verify, perturb).
// Returns the process exit code: 0 pass, 1 verification failure, 2
// inadmissible parameters, 3 I/O or parse error.
int run_command(const std::string& name, const Options& opt);

}  // namespace diracred::cli
