#pragma once

#include "diracred/grids.hpp"
#include "diracred/types.hpp"

namespace diracred {

// The two constraint schemes that cast an assembled pair into the bilayer
// disorder layout: way1 ties the channels by a1 = d2, a2 = d1; way2 fixes
// tau = pi/4 and a1 + a2 = d1 + d2. Both require epsilon = -1.
enum class DisorderScheme { way1, way2 };

// Named entries of the disorder Hamiltonian layout
//   [ V_A    V        W_A      W_plus ]
//   [ V^dag  V_B      w_minus  W_B    ]
//   [ ...                V_A   V_prime]
//   [ ...                      V_B    ]
// (lower triangle conjugate). The printed layout shows W_plus at both (1,4)
// and (2,3); the assembled form is the ground truth here, so the (2,3) entry
// is carried separately as w_minus. Under way1 the two coincide.
struct DisorderComponents {
    ScalarField V_A, V_B, V, V_prime, W_A, W_B, W_plus, w_minus;
};

// Reads off the disorder components of a reduced pair under the given scheme.
// The scheme constraints are checked by sampling the channel fields on the
// probe grid (relative tolerance tol against the largest sampled magnitude);
// a violation, or epsilon != -1, or (way2) tau != pi/4, throws SchemeMismatch.
// Embedding the result agrees with assemble(pair) entrywise.
DisorderComponents disorder_identify(const ReducedPair& pair, DisorderScheme scheme,
                                     const Grid2D& probe, double tol = 1e-10);

// Builds the 4x4 potential field of the layout above from named components.
Potential4x4 disorder_embed(const DisorderComponents& c);

}  // namespace diracred
