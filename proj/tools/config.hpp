#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diracred/crossed_combs.hpp"
#include "diracred/grids.hpp"
#include "diracred/soliton.hpp"
#include "diracred/types.hpp"
#include "emit.hpp"

namespace diracred::cli {

enum class ModelKind { none, poschl_teller, crossed_combs, soliton, scenario2, custom };

const char* model_name(ModelKind m);

struct PerturbSpec {
    bool present = false;
    complexd v1, v2, v3, v4;
};

struct RunConfig {
    ModelKind model = ModelKind::none;
    nlohmann::json raw;  // validated document, echoed in reports

    // poschl_teller
    double pt_delta = 1.0;
    double pt_delta2 = 0.7071067811865476;
    std::vector<int> pt_n;
    std::vector<double> pt_ky;
    // crossed_combs
    CrossedCombParams comb1, comb2;
    // soliton
    SolitonParams sol;
    double sol_Delta = 1.0;
    // scenario2
    double s2_delta = 1.0, s2_ky = 0.0, s2_V2 = 0.0;
    int s2_n = 1;
    // custom: constant entries a1, b1, d1, a2, b2, d2
    std::array<complexd, 6> custom_entries{};

    ReductionParams reduction;  // model default unless the config overrides it
    std::optional<Grid1D> grid1;
    std::optional<Grid2D> grid2;
    std::optional<GridTX> gridtx;
    std::optional<double> tol;
    std::optional<int> epsilon_pin;  // detect: pin the kinetic sign instead of trying both
    std::uint64_t seed = 12345;
    std::string input;           // detect: potential table to read
    std::string potential_file;  // verify: stored potential to cross-check
    PerturbSpec perturb;
};

// Loads and validates a config document. Unknown keys at any level are hard
// errors (CliError with exit code 3); model-fixed reduction parameters that
// the config contradicts raise CliError with exit code 2.
RunConfig load_config(const std::string& path);

// Grid of the requested kind, else the fallback (configs carry one primary
// grid; commands needing a different kind fall back to model defaults).
Grid1D grid1_or(const RunConfig& c, const Grid1D& fallback);
Grid2D grid2_or(const RunConfig& c, const Grid2D& fallback);
GridTX gridtx_or(const RunConfig& c, const GridTX& fallback);

}  // namespace diracred::cli
