#pragma once

#include "diracred/grids.hpp"
#include "diracred/sampled.hpp"
#include "diracred/types.hpp"

namespace diracred {

// Real field triple of the band picture: gap Delta, shift mu, coupling lambda.
struct SpinOrbitFields {
    ScalarField Delta, mu, lambda;
};

// 4x4 potential diag(mu+Delta, mu-Delta, mu-Delta, mu+Delta) with the coupling
// entries (2,3) = e^{-i phi} lambda and (3,2) = e^{i phi} lambda, where
//   Delta = a1/2 - (d1+d2)/4, mu = a1/2 + (d1+d2)/4, lambda = (d1-d2)/2.
// Equals assemble() of the channel pair {(a1, 0, d1), (a1, 0, d2)} at
// tau = pi/4, epsilon = +1, same phi. All three inputs must be real-valued
// (hermitian_entry); throws ParameterError otherwise.
Potential4x4 spin_orbit_assemble(const ScalarField& a1, const ScalarField& d1,
                                 const ScalarField& d2, double phi);

// The shifted-channel model: channel 1 carries the tanh mass profile
// m1(x) = 2 delta tanh(x / 2 delta) + k_y as diag(m1, -m1); channel 2 is the
// same with the lower entry shifted by 2 V2. Coupled at tau = pi/4,
// phi = pi/2, epsilon = +1.
struct Scenario2Model {
    ReducedPair pair;
    SpinOrbitFields fields;  // Delta = k_y - V2/2 + 2 delta tanh(x/2 delta), mu = V2/2, lambda = -V2
    SampledSpinor psi;       // rotated bound profile at t = 0, unit norm
    SampledSpinor xi;        // same at k_y -> k_y - V2; extra phase e^{-i V2 t}
    double energy_psi;       // E_n(k_y)
    double energy_xi;        // E_n(k_y - V2), the shifted-channel band energy
    double frequency_xi;     // E_n(k_y - V2) + V2: total phase frequency of xi
};

// Builds the model for band n on the grid. Both (delta, k_y, n) and
// (delta, k_y - V2, n) must label normalizable bound states; a failure throws
// NotAdmissible naming the channel. n = 0 throws ZeroEnergyMode.
Scenario2Model scenario2_model(double delta, double k_y, double V2, int n,
                               const Grid1D& grid);

}  // namespace diracred
