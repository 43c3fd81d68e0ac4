#pragma once

#include <vector>

#include "diracred/types.hpp"

namespace diracred {

// Uniform 1D grid on [x_min, x_max] with n nodes, endpoints included.
struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    int n = 2;

    void validate() const;
    double h() const { return (x_max - x_min) / (n - 1); }
    int size() const { return n; }
    double x(int j) const { return x_min + j * h(); }
    Point point(int j) const { return Point{x(j), 0.0, 0.0}; }
    // Trapezoid weight of node j.
    double weight(int j) const { return (j == 0 || j == n - 1) ? 0.5 * h() : h(); }
};

// Uniform tensor grid on [x_min,x_max] x [y_min,y_max]; index k = iy*nx + ix.
struct Grid2D {
    double x_min = -1.0, x_max = 1.0;
    int nx = 2;
    double y_min = -1.0, y_max = 1.0;
    int ny = 2;

    void validate() const;
    double hx() const { return (x_max - x_min) / (nx - 1); }
    double hy() const { return (y_max - y_min) / (ny - 1); }
    int size() const { return nx * ny; }
    int index(int ix, int iy) const { return iy * nx + ix; }
    Point point(int k) const {
        const int iy = k / nx, ix = k % nx;
        return Point{x_min + ix * hx(), y_min + iy * hy(), 0.0};
    }
    double weight(int k) const {
        const int iy = k / nx, ix = k % nx;
        const double wx = (ix == 0 || ix == nx - 1) ? 0.5 * hx() : hx();
        const double wy = (iy == 0 || iy == ny - 1) ? 0.5 * hy() : hy();
        return wx * wy;
    }
};

// Uniform grid in (t, x); index k = it*nx + ix. States on it depend on t and x only.
struct GridTX {
    double t_min = 0.0, t_max = 1.0;
    int nt = 2;
    double x_min = -1.0, x_max = 1.0;
    int nx = 2;

    void validate() const;
    double ht() const { return (t_max - t_min) / (nt - 1); }
    double hx() const { return (x_max - x_min) / (nx - 1); }
    int size() const { return nt * nx; }
    int index(int ix, int it) const { return it * nx + ix; }
    Point point(int k) const {
        const int it = k / nx, ix = k % nx;
        return Point{x_min + ix * hx(), 0.0, t_min + it * ht()};
    }
    double weight(int k) const {
        const int it = k / nx, ix = k % nx;
        const double wx = (ix == 0 || ix == nx - 1) ? 0.5 * hx() : hx();
        const double wt = (it == 0 || it == nt - 1) ? 0.5 * ht() : ht();
        return wx * wt;
    }
};

// Trapezoid quadrature, summed in index order so reruns are bit-identical.
template <class Grid>
complexd quadrature(const VectorXcd& values, const Grid& g) {
    if (values.size() != g.size())
        throw ParameterError("quadrature: value count does not match grid");
    complexd acc{0.0, 0.0};
    for (int k = 0; k < g.size(); ++k) acc += g.weight(k) * values[k];
    return acc;
}

template <class Grid>
double quadrature_real(const VectorXd& values, const Grid& g) {
    if (values.size() != g.size())
        throw ParameterError("quadrature: value count does not match grid");
    double acc = 0.0;
    for (int k = 0; k < g.size(); ++k) acc += g.weight(k) * values[k];
    return acc;
}

}  // namespace diracred
