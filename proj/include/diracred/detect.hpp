#pragma once

#include <span>
#include <vector>

#include "diracred/reduction.hpp"

namespace diracred {

// Result of recognizing a 4x4 potential as an assembled pair.
struct DetectResult {
    ReductionParams params;
    ReducedPair pair;        // channel fields evaluate lazily through the source potential
    double worst_violation;  // max relative rebuild deviation over the sample points
    double phase_spread;     // max deviation of per-point angle estimates from the mean
    int points_used;         // sample points contributing to the angle estimate
};

// Angle recovery and channel extraction from samples of a 4x4 potential.
//
// cot(2 tau) and phi are estimated jointly from the complex ratio
// (V22 - V33) / (2 eps V23-entry) at each sample point (falling back to
// (V11 - V44) / (2 V14-entry) when the d-channel witness vanishes), combined by
// a magnitude-weighted circular mean. The returned branch is canonical:
// tau in (0, pi/4] (cot 2tau >= 0), phi in [0, 2 pi). An input assembled with
// tau > pi/4 is reported as (pi/2 - tau, phi + pi) with the two channels
// swapped; the matrix is identical, so the branches cannot be distinguished.
//
// After angle recovery the six channel fields are solved linearly from the
// entry sums and cross-entries. The redundant entry relations (diagonal and
// (1,2)/(3,4) splits against the cross-entry witnesses, the locked (2,4)
// entry, the phase rays of (1,4) and (2,3), Hermiticity) span exactly the
// constraints an assembled potential satisfies; their worst relative residual
// over the sample points decides acceptance against tol, so a corrupted entry
// is reported at its own magnitude.
//
// Throws UnderdeterminedAngle when both angle witnesses vanish on every sample
// point (e.g. block-diagonal input) or the angle sits in the degenerate branch
// |sin 2 tau| <= tol_degenerate; NotReducible (with the worst violation) when
// the rebuilt potential does not match the input.
DetectResult detect(const Potential4x4& V, int epsilon,
                    std::span<const Point> sample_points, double tol = 1e-8);

// Same, for potentials known only through point samples (mats[k] = V(points[k])).
DetectResult detect_sampled(std::span<const Point> points,
                            std::span<const Matrix4cd> mats, int epsilon,
                            double tol = 1e-8);

// Channel extraction at known angles: inverts the assembled entry formulas.
ReducedPair extract_pair(const Potential4x4& V, const ReductionParams& params);

// Maps an angle set with cot(2 tau) < 0 to the equivalent canonical one
// (pi/2 - tau, phi + pi, epsilon); second element reports whether the two
// channel potentials swap. Assumes tau in (0, pi/2).
std::pair<ReductionParams, bool> canonical_branch(const ReductionParams& params);

inline constexpr double tol_degenerate = 1e-6;

}  // namespace diracred
