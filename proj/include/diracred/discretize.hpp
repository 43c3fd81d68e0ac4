#pragma once

#include "diracred/grids.hpp"
#include "diracred/types.hpp"

namespace diracred {

// Finite-difference schemes for the 1D two-component operator
// [[a, -i d/dx + b], [-i d/dx + conj(b), d]].
//
// staggered: upper component on nodes x_j, lower on x_j + h/2, interleaved
// (u0, l0, u1, l1, ...). First differences land centered on the sample points
// (O(h^2)) and the free dispersion (2/h) sin(kh/2) is monotone over the
// Brillouin zone, so no doubler branch appears. Off-diagonal potential values
// are taken at bond midpoints, which makes the matrix Hermitian by
// construction. Bandwidth 1.
//
// central: both components on x_j, symmetric differences over 2h; doubler
// branch present (kept for benchmarks). Bandwidth 3.
//
// wilson: central plus the sigma_3-weighted second-difference term
// (r/(2h)) (2 psi_j - psi_{j+1} - psi_{j-1}) that gaps the doubler out.
// Bandwidth 3.
enum class Scheme { staggered, central, wilson };

// Banded Hermitian matrix of dimension 2 * n_points, upper band storage:
// band(kd + i - j, j) = A(i, j) for max(0, j - kd) <= i <= j, column-major,
// directly usable as LAPACK 'U' band storage with ldab = kd + 1.
struct DiscreteOperator {
    Scheme scheme = Scheme::staggered;
    Grid1D grid;
    int kd = 1;       // superdiagonal count
    MatrixXcd band;   // (kd + 1) x dim

    int dim() const { return 2 * grid.n; }
    VectorXcd apply(const VectorXcd& v) const;
    MatrixXcd dense() const;
};

// Discretizes the potential (evaluated at y = t = 0) over the grid with
// Dirichlet truncation at the box ends. Throws ParameterError for
// n_points < 8. wilson_r only affects the wilson scheme.
DiscreteOperator discretize_1d(const Potential2x2& V, const Grid1D& grid,
                               Scheme scheme = Scheme::staggered,
                               double wilson_r = 1.0);

}  // namespace diracred
