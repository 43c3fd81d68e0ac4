#pragma once

#include <cmath>

#include "diracred/disorder.hpp"
#include "diracred/grids.hpp"
#include "diracred/sampled.hpp"
#include "diracred/types.hpp"

namespace diracred {

// One comb: mass m, strength omega, kappa = sqrt(m^2 + omega^2).
struct CrossedCombParams {
    double m = 0.0;
    double omega = 0.0;

    double kappa() const { return std::hypot(m, omega); }
};

// Which coordinate the comb varies in.
enum class Axis { x, y };

// Diagonal channel potential a = d = -4 m omega^2 sin^2(kappa s) / D with
// s = x or y per axis and D = m^2 + omega^2 cos(2 kappa s) + kappa^2 cosh(2 omega r)
// (r the other coordinate), b = 0. For m != 0, D >= 2 m^2 > 0 everywhere;
// m = 0 yields the zero potential.
Potential2x2 crossed_comb_potential(const CrossedCombParams& p, Axis axis);

// The barrier-localized bound state at energy E = m, sampled with closed-form
// dx/dy arrays and dt = -i m * value (time phase e^{-i m t}, profile at t = 0).
// axis = x is the printed state; axis = y is its companion: the same profile
// evaluated at (X, Y) = (-y, x) with spin phases diag(e^{i pi/4}, e^{-i pi/4}).
// Unnormalized (the printed closed form; |psi(0,0)|^2 = kappa^2).
SampledSpinor crossed_comb_mode(const CrossedCombParams& p, Axis axis,
                                const Grid2D& grid);

struct CrossedCombReducible {
    Potential4x4 potential;         // assembled 4x4 of the two comb channels
    DisorderComponents components;  // named entries under tau = pi/4, eps = -1
    ReducedPair pair;
};

// The two crossed combs as one 4x4 potential: channel 1 varies in x, channel 2
// in y, coupled at tau = pi/4, epsilon = -1, phase phi. The assembled form is
// canonical; the named components come from the sum-constraint layout.
CrossedCombReducible crossed_comb_reducible(const CrossedCombParams& p1,
                                            const CrossedCombParams& p2, double phi);

}  // namespace diracred
