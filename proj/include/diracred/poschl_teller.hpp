#pragma once

#include <span>
#include <string>
#include <vector>

#include "diracred/disorder.hpp"
#include "diracred/grids.hpp"
#include "diracred/sampled.hpp"
#include "diracred/types.hpp"

namespace diracred {

// Bound-state label of the tanh-profile solvable channel: coupling delta > 0,
// transverse momentum k_y, band index n >= 0.
struct PoschlTellerParams {
    double delta = 1.0;
    double k_y = 0.0;
    int n = 0;
};

// Admissibility report. `admissible` covers the four range inequalities
//   n <= 4 delta^2,  |k_y| < 2 delta,  |k_y - 2 delta| > |E_n|,  |k_y + 2 delta| > |E_n|;
// `reason` names the first violated one. `square_integrable` is the sharper
// signed-exponent condition (4 delta^2 - n)^2 > 8 delta^3 |k_y| that the mode
// profile actually needs to decay on both ends; the range inequalities alone
// only make the exponents real, not positive. `boundary` marks n = 4 delta^2,
// where the exponents sum to zero and no normalizable profile exists.
struct PtAdmissibility {
    bool admissible = false;
    std::string reason;
    bool square_integrable = false;
    bool boundary = false;
};

PtAdmissibility pt_admissible(const PoschlTellerParams& p);

// Bound-state energy E_n = sqrt( 2 (n - n^2/(8 delta^2)) (1 - (2 delta k_y / (4 delta^2 - n))^2) ),
// nonnegative branch; negative_branch flips the sign (the spectrum is symmetric).
// n = 0 returns 0 for any k_y in range. Throws NotAdmissible naming the violated
// range inequality. The boundary n = 4 delta^2 is admissible (closed interval)
// for k_y = 0 only; with k_y != 0 the energy formula divides by zero there.
double pt_energy(const PoschlTellerParams& p, bool negative_branch = false);

// Bound-state profile sampled on the grid, unit quadrature norm:
//   lower f(x) = ((1+z)/2)^sigma ((1-z)/2)^rho P_n^(2 rho, 2 sigma)(z), z = tanh(x / 2 delta)
//   upper     = -(i/E_n) (f' + (k_y + 2 delta z) f)
// with closed-form x-derivatives in dx (component order: upper, lower).
// Throws ZeroEnergyMode for n = 0 and NotAdmissible when the range inequalities
// or the square-integrability refinement fail.
SampledSpinor pt_mode(const PoschlTellerParams& p, const Grid1D& grid);

// Effective 1D channel potential for the eigensolver: after separating the
// transverse plane wave, the momentum and the tanh profile fold into the
// off-diagonal entry b(x) = -i (k_y + 2 delta tanh(x / 2 delta)), a = d = 0.
Potential2x2 pt_effective_1d(double delta, double k_y);

struct BandPoint {
    int n;
    double k_y;
    double energy;
};

// Tabulates E_n(k_y) over the requested bands and momenta, emitting only
// points with a normalizable bound state (plus the n = 0 zero line on
// |k_y| < 2 delta). Every emitted |E| lies strictly inside the gap edges
// |k_y -+ 2 delta|.
std::vector<BandPoint> pt_band_structure(double delta, std::span<const int> n_list,
                                         std::span<const double> k_y_grid);

// The two tanh-profile channels of the disorder construction: comb 1 varies in
// x with width delta1, comb 2 in y with width delta2, a = d = 0 in both.
ReducedPair pt_disorder_pair(double delta1, double delta2, const ReductionParams& params);

struct PtDisorderPotential {
    Potential4x4 potential;        // assembled 4x4 of the pair
    DisorderComponents components; // named entries under the way1 layout
};

// Assembled disorder potential plus its named components. Requires
// epsilon = -1 (SchemeMismatch otherwise).
PtDisorderPotential pt_disorder_potential(double delta1, double delta2,
                                          const ReductionParams& params);

}  // namespace diracred
