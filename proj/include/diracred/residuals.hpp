#pragma once

#include <span>

#include "diracred/grids.hpp"
#include "diracred/sampled.hpp"
#include "diracred/types.hpp"

namespace diracred {

// Placement of the first-order derivative blocks in the kinetic term.
//   pi_upper:  K = [[0, pi], [pi^dag, 0]] with pi = -i d_x - d_y
//   pi_lower:  K = [[0, pi^dag], [pi, 0]]
//   pi_x_only: both off-diagonal entries are -i d_x (1D problems)
// The four-component operator applies the same pair blockwise, the second
// block carrying the kinetic sign flag:
//   rows = -i d_t Psi + (pi Psi2, pi^dag Psi1, eps pi^dag Psi4, eps pi Psi3) + V Psi.
enum class KineticForm { pi_upper, pi_lower, pi_x_only };

// Relative residual ||(K + V - E) psi||_2 / ||psi||_2 of a stationary
// two-component state. Closed-form derivative arrays are used when the state
// carries them; otherwise central differences on interior nodes, and boundary
// nodes drop out of both norms so the truncation error stays clean O(h^2).
double residual_stationary(const Potential2x2& V, const SampledSpinor& psi, double E,
                           const Grid1D& grid, KineticForm kf = KineticForm::pi_x_only);
double residual_stationary(const Potential2x2& V, const SampledSpinor& psi, double E,
                           const Grid2D& grid, KineticForm kf = KineticForm::pi_upper);

// Relative residual of the full four-component equation
//   -i d_t Psi + K Psi + V Psi = 0.
// Derivatives along directions the grid does not resolve come from the
// state's closed-form arrays, or vanish when absent (state constant there).
double residual_spacetime(const Potential4x4& V, const SampledBispinor& Psi,
                          const GridTX& grid, KineticForm kf = KineticForm::pi_upper,
                          double epsilon = 1.0);
double residual_spacetime(const Potential4x4& V, const SampledBispinor& Psi,
                          const Grid2D& grid, KineticForm kf = KineticForm::pi_upper,
                          double epsilon = 1.0);
double residual_spacetime(const Potential4x4& V, const SampledBispinor& Psi,
                          const Grid1D& grid, KineticForm kf = KineticForm::pi_upper,
                          double epsilon = 1.0);

struct ConvergenceReport {
    double order = 0.0;  // least-squares slope of log(error) against log(h)
    bool floor = false;  // every error sits at the rounding floor; slope meaningless
};

inline constexpr double convergence_floor = 1e-10;

// Observed convergence order over a refinement chain of at least 3 grids.
ConvergenceReport convergence_order(std::span<const double> h,
                                    std::span<const double> errors);

}  // namespace diracred
