#pragma once

#include <cmath>
#include <utility>

#include "diracred/grids.hpp"
#include "diracred/sampled.hpp"
#include "diracred/spin_orbit.hpp"
#include "diracred/types.hpp"

namespace diracred {

// Breather-profile parameters: mass m, frequency omega, kappa = sqrt(m^2 + omega^2).
struct SolitonParams {
    double m = 0.0;
    double omega = 0.0;

    double kappa() const { return std::hypot(m, omega); }
};

struct SolitonFields {
    ScalarField a1;  // m (-1 + 4 kappa^2 cosh^2(omega t) / D)
    ScalarField D;   // m^2 + kappa^2 cosh(2 omega t) + omega^2 cosh(2 kappa x)
};

// The time-dependent channel fields; the model fixes a2 = a1, d1 = -a1, b = 0.
SolitonFields soliton_fields(const SolitonParams& p);

// The two orthogonal localized states of the assembled system (tau = pi/4,
// eps = +1), sampled over the (t, x) grid with closed-form dx and dt arrays.
// The printed profiles solve the equation after time reflection, so these
// carry sinh(omega t) -> -sinh(omega t); the residual tests pin that choice.
// Unnormalized; <Psi1, Psi2> vanishes at every t.
std::pair<SampledBispinor, SampledBispinor> soliton_bispinors(const SolitonParams& p,
                                                              double phi,
                                                              const GridTX& grid);

// Field triple of the equivalent band picture for a constant-Delta choice of
// the second channel: Delta = Delta_const, mu = -Delta - m + Q,
// lambda = 2 (Delta + m - Q) with Q = 4 m kappa^2 cosh^2(omega t) / D.
// The printed formulas satisfy lambda = -2 mu identically.
SpinOrbitFields soliton_mu_lambda(const SolitonParams& p, double Delta_const);

// The second-channel diagonal entry that makes Delta constant:
// d2 = -(4 Delta_const + 3 m - 3 Q).
ScalarField soliton_d2(const SolitonParams& p, double Delta_const);

// Full channel pair {(a1, 0, -a1), (a1, 0, d2)} at tau = pi/4, eps = +1.
ReducedPair soliton_pair(const SolitonParams& p, double Delta_const, double phi);

}  // namespace diracred
