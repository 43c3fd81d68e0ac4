#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "diracred/grids.hpp"
#include "diracred/types.hpp"

namespace diracred::cli {

// Error carrying the process exit code (3 = I/O or parse, 2 = inadmissible).
struct CliError : std::runtime_error {
    int exit_code;
    CliError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

// Fixed file precision: scientific notation with 17 significant digits.
std::string num17(double v);

void write_file(const std::string& path, const std::string& content);

// Potential tables: one header line, whitespace-separated columns. Axis
// columns are grid indices plus coordinates; then Re/Im of the 16 matrix
// entries in row-major order (Re11 Im11 Re12 ... Im44).
std::string potential_table(const Potential4x4& V, const Grid1D& g);
std::string potential_table(const Potential4x4& V, const Grid2D& g);
std::string potential_table(const Potential4x4& V, const GridTX& g);

struct PotentialSamples {
    std::vector<Point> points;
    std::vector<Matrix4cd> mats;
    std::vector<std::array<int, 2>> indices;  // per-row grid indices for diagnostics
};

// Parses a potential table in any of the three axis layouts. Throws
// CliError(3) with line/field diagnostics on malformed input.
PotentialSamples read_potential_table(const std::string& path);

// Component and density tables for sampled states.
std::string component_table(const VectorXcd& values, const Grid1D& g);
std::string component_table(const VectorXcd& values, const Grid2D& g);
std::string component_table(const VectorXcd& values, const GridTX& g);
std::string density_table(const VectorXd& values, const Grid1D& g);
std::string density_table(const VectorXd& values, const Grid2D& g);
std::string density_table(const VectorXd& values, const GridTX& g);

}  // namespace diracred::cli
