#include "diracred/discretize.hpp"

#include <cmath>

namespace diracred {

namespace {

struct BandBuilder {
    int kd;
    MatrixXcd band;

    BandBuilder(int kd_, int dim) : kd(kd_), band(MatrixXcd::Zero(kd_ + 1, dim)) {}

    // Adds v at (i, j), j >= i; the conjugate mirror is implicit in the storage.
    void add_upper(int i, int j, complexd v) { band(kd + i - j, j) += v; }
};

}  // namespace

VectorXcd DiscreteOperator::apply(const VectorXcd& v) const {
    const int n = dim();
    if (v.size() != n) throw ParameterError("vector length does not match operator");
    VectorXcd out = VectorXcd::Zero(n);
    for (int j = 0; j < n; ++j) {
        for (int i = std::max(0, j - kd); i <= j; ++i) {
            const complexd a = band(kd + i - j, j);
            out[i] += a * v[j];
            if (i != j) out[j] += std::conj(a) * v[i];
        }
    }
    return out;
}

MatrixXcd DiscreteOperator::dense() const {
    const int n = dim();
    MatrixXcd m = MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = std::max(0, j - kd); i <= j; ++i) {
            m(i, j) = band(kd + i - j, j);
            if (i != j) m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

DiscreteOperator discretize_1d(const Potential2x2& V, const Grid1D& grid,
                               Scheme scheme, double wilson_r) {
    grid.validate();
    if (grid.n < 8) throw ParameterError("discretize_1d needs n_points >= 8");

    const int n = grid.n;
    const double h = grid.h();
    const auto at = [&](double x) { return Point{x, 0.0, 0.0}; };

    DiscreteOperator op;
    op.scheme = scheme;
    op.grid = grid;
    op.kd = scheme == Scheme::staggered ? 1 : 3;
    BandBuilder b(op.kd, 2 * n);

    if (scheme == Scheme::staggered) {
        const complexd dkin{0.0, -1.0 / h};
        for (int j = 0; j < n; ++j) {
            const double xj = grid.x(j);
            b.add_upper(2 * j, 2 * j, V.a(at(xj)));
            b.add_upper(2 * j + 1, 2 * j + 1, V.d(at(xj + 0.5 * h)));
            // bond u_j <-> l_j, midpoint x_j + h/4
            b.add_upper(2 * j, 2 * j + 1, dkin + 0.5 * V.b(at(xj + 0.25 * h)));
            // bond l_j <-> u_{j+1}, midpoint x_j + 3h/4
            if (j + 1 < n)
                b.add_upper(2 * j + 1, 2 * j + 2,
                            dkin + 0.5 * std::conj(V.b(at(xj + 0.75 * h))));
        }
    } else {
        const complexd dkin{0.0, -1.0 / (2.0 * h)};
        for (int j = 0; j < n; ++j) {
            const double xj = grid.x(j);
            const Point pj = at(xj);
            b.add_upper(2 * j, 2 * j, V.a(pj));
            b.add_upper(2 * j + 1, 2 * j + 1, V.d(pj));
            b.add_upper(2 * j, 2 * j + 1, V.b(pj));
            if (j + 1 < n) {
                // -i d/dx couples u_j to l_{j+1} and l_j to u_{j+1}
                b.add_upper(2 * j, 2 * (j + 1) + 1, dkin);
                b.add_upper(2 * j + 1, 2 * (j + 1), dkin);
            }
        }
        if (scheme == Scheme::wilson) {
            const double w = wilson_r / (2.0 * h);
            for (int j = 0; j < n; ++j) {
                b.add_upper(2 * j, 2 * j, 2.0 * w);
                b.add_upper(2 * j + 1, 2 * j + 1, -2.0 * w);
                if (j + 1 < n) {
                    b.add_upper(2 * j, 2 * (j + 1), -w);
                    b.add_upper(2 * j + 1, 2 * (j + 1) + 1, w);
                }
            }
        }
    }
    op.band = std::move(b.band);
    return op;
}

}  // namespace diracred
