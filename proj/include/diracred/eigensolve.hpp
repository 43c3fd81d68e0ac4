#pragma once

#include <vector>

#include "diracred/discretize.hpp"

namespace diracred {

struct EigenPair {
    double energy;
    VectorXcd vector;            // unit 2-norm
    double participation_ratio;  // 1 / sum_i p_i^2 with p_i = |v_i|^2
};

struct GapSpectrum {
    std::vector<EigenPair> states;  // bound-like states in the window, sorted by energy
    int filtered_count = 0;         // window states dropped by the localization filter
};

// All eigenpairs of the operator with energy in (e_lo, e_hi), keeping only
// localized (bound-like) states: participation ratio < pr_factor * n_points.
// Extended states on a Dirichlet box have participation ratio of order the
// full dimension, so the filter separates bound modes from the discretized
// continuum. Small problems are solved densely; large ones go through the
// banded solver (same results, bounded memory per the band storage).
// force_dense pins the dense path. Throws NumericsError on solver failure.
GapSpectrum eigen_in_gap(const DiscreteOperator& op, double e_lo, double e_hi,
                         double pr_factor = 0.5, bool force_dense = false);

}  // namespace diracred
