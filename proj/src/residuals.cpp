#include "diracred/residuals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace diracred {

namespace {

// One differentiation direction: analytic arrays win, then central differences
// on the grid, then zero (state constant along a direction the grid lacks).
template <int NC>
struct AxisDeriv {
    const std::array<VectorXcd, NC>* analytic = nullptr;
    const std::array<VectorXcd, NC>* values = nullptr;
    bool on_grid = false;
    int stride = 1;
    int extent = 1;
    double inv2h = 0.0;

    bool fd() const { return analytic == nullptr && on_grid; }
    bool interior(int k) const {
        if (!fd()) return true;
        const int idx = (k / stride) % extent;
        return idx > 0 && idx < extent - 1;
    }
    complexd at(int c, int k) const {
        if (analytic) return (*analytic)[c][k];
        if (!on_grid) return complexd{0.0, 0.0};
        return ((*values)[c][k + stride] - (*values)[c][k - stride]) * inv2h;
    }
};

template <int NC>
AxisDeriv<NC> off_grid_axis(const SampledState<NC>& s, bool has,
                            const std::array<VectorXcd, NC>& arr) {
    AxisDeriv<NC> a;
    if (has) a.analytic = &arr;
    a.values = &s.v;
    return a;
}

template <int NC>
AxisDeriv<NC> grid_axis(const SampledState<NC>& s, bool has,
                        const std::array<VectorXcd, NC>& arr, int stride, int extent,
                        double h) {
    AxisDeriv<NC> a;
    if (has) a.analytic = &arr;
    a.values = &s.v;
    a.on_grid = true;
    a.stride = stride;
    a.extent = extent;
    a.inv2h = 0.5 / h;
    return a;
}

struct Axes1D {
    template <int NC>
    static void fill(const SampledState<NC>& s, const Grid1D& g, AxisDeriv<NC>& ax,
                     AxisDeriv<NC>& ay, AxisDeriv<NC>& at) {
        ax = grid_axis<NC>(s, s.has_dx(), s.dx, 1, g.n, g.h());
        ay = off_grid_axis<NC>(s, s.has_dy(), s.dy);
        at = off_grid_axis<NC>(s, s.has_dt(), s.dt);
    }
};

struct Axes2D {
    template <int NC>
    static void fill(const SampledState<NC>& s, const Grid2D& g, AxisDeriv<NC>& ax,
                     AxisDeriv<NC>& ay, AxisDeriv<NC>& at) {
        ax = grid_axis<NC>(s, s.has_dx(), s.dx, 1, g.nx, g.hx());
        ay = grid_axis<NC>(s, s.has_dy(), s.dy, g.nx, g.ny, g.hy());
        at = off_grid_axis<NC>(s, s.has_dt(), s.dt);
    }
};

struct AxesTX {
    template <int NC>
    static void fill(const SampledState<NC>& s, const GridTX& g, AxisDeriv<NC>& ax,
                     AxisDeriv<NC>& ay, AxisDeriv<NC>& at) {
        ax = grid_axis<NC>(s, s.has_dx(), s.dx, 1, g.nx, g.hx());
        ay = off_grid_axis<NC>(s, s.has_dy(), s.dy);
        at = grid_axis<NC>(s, s.has_dt(), s.dt, g.nx, g.nt, g.ht());
    }
};

struct PiPair {
    complexd pi, pidag;
};

template <int NC>
PiPair apply_pi(const AxisDeriv<NC>& ax, const AxisDeriv<NC>& ay, KineticForm kf,
                int c, int k) {
    const complexd mi{0.0, -1.0};
    const complexd dx = ax.at(c, k);
    if (kf == KineticForm::pi_x_only) {
        const complexd d = mi * dx;
        return {d, d};
    }
    const complexd dy = ay.at(c, k);
    PiPair out{mi * dx - dy, mi * dx + dy};
    if (kf == KineticForm::pi_lower) std::swap(out.pi, out.pidag);
    return out;
}

template <int NC, class Grid, class AxesOf, class RowFn>
double relative_residual(const SampledState<NC>& s, const Grid& g, RowFn&& rows) {
    if (s.size() != g.size()) throw ParameterError("state/grid size mismatch");
    AxisDeriv<NC> ax, ay, at;
    AxesOf::fill(s, g, ax, ay, at);
    double num = 0.0, den = 0.0;
    std::array<complexd, NC> r;
    for (int k = 0; k < g.size(); ++k) {
        if (!ax.interior(k) || !ay.interior(k) || !at.interior(k)) continue;
        rows(k, ax, ay, at, r);
        const double w = g.weight(k);
        double rk = 0.0, vk = 0.0;
        for (int c = 0; c < NC; ++c) {
            rk += std::norm(r[c]);
            vk += std::norm(s.v[c][k]);
        }
        num += w * rk;
        den += w * vk;
    }
    if (!(den > 0.0)) throw NumericsError("residual of a zero state");
    return std::sqrt(num / den);
}

template <class Grid, class AxesOf>
double stationary_impl(const Potential2x2& V, const SampledSpinor& psi, double E,
                       const Grid& g, KineticForm kf) {
    return relative_residual<2, Grid, AxesOf>(
        psi, g,
        [&](int k, const AxisDeriv<2>& ax, const AxisDeriv<2>& ay,
            const AxisDeriv<2>&, std::array<complexd, 2>& r) {
            const Point p = g.point(k);
            const complexd a = V.a(p), b = V.b(p), d = V.d(p);
            const complexd v0 = psi.v[0][k], v1 = psi.v[1][k];
            r[0] = apply_pi(ax, ay, kf, 1, k).pi + a * v0 + b * v1 - E * v0;
            r[1] = apply_pi(ax, ay, kf, 0, k).pidag + std::conj(b) * v0 + d * v1 -
                   E * v1;
        });
}

template <class Grid, class AxesOf>
double spacetime_impl(const Potential4x4& V, const SampledBispinor& Psi,
                      const Grid& g, KineticForm kf, double epsilon) {
    if (epsilon != 1.0 && epsilon != -1.0)
        throw ParameterError("epsilon must be +1 or -1");
    const complexd mi{0.0, -1.0};
    return relative_residual<4, Grid, AxesOf>(
        Psi, g,
        [&](int k, const AxisDeriv<4>& ax, const AxisDeriv<4>& ay,
            const AxisDeriv<4>& at, std::array<complexd, 4>& r) {
            const Matrix4cd m = V(g.point(k));
            Vector4cd v;
            for (int c = 0; c < 4; ++c) v[c] = Psi.v[c][k];
            r[0] = apply_pi(ax, ay, kf, 1, k).pi;
            r[1] = apply_pi(ax, ay, kf, 0, k).pidag;
            r[2] = epsilon * apply_pi(ax, ay, kf, 3, k).pidag;
            r[3] = epsilon * apply_pi(ax, ay, kf, 2, k).pi;
            for (int c = 0; c < 4; ++c) {
                r[c] += mi * at.at(c, k);
                for (int j = 0; j < 4; ++j) r[c] += m(c, j) * v[j];
            }
        });
}

}  // namespace

double residual_stationary(const Potential2x2& V, const SampledSpinor& psi, double E,
                           const Grid1D& grid, KineticForm kf) {
    grid.validate();
    return stationary_impl<Grid1D, Axes1D>(V, psi, E, grid, kf);
}

double residual_stationary(const Potential2x2& V, const SampledSpinor& psi, double E,
                           const Grid2D& grid, KineticForm kf) {
    grid.validate();
    return stationary_impl<Grid2D, Axes2D>(V, psi, E, grid, kf);
}

double residual_spacetime(const Potential4x4& V, const SampledBispinor& Psi,
                          const GridTX& grid, KineticForm kf, double epsilon) {
    grid.validate();
    return spacetime_impl<GridTX, AxesTX>(V, Psi, grid, kf, epsilon);
}

double residual_spacetime(const Potential4x4& V, const SampledBispinor& Psi,
                          const Grid2D& grid, KineticForm kf, double epsilon) {
    grid.validate();
    return spacetime_impl<Grid2D, Axes2D>(V, Psi, grid, kf, epsilon);
}

double residual_spacetime(const Potential4x4& V, const SampledBispinor& Psi,
                          const Grid1D& grid, KineticForm kf, double epsilon) {
    grid.validate();
    return spacetime_impl<Grid1D, Axes1D>(V, Psi, grid, kf, epsilon);
}

ConvergenceReport convergence_order(std::span<const double> h,
                                    std::span<const double> errors) {
    if (h.size() != errors.size())
        throw ParameterError("convergence_order: h/error count mismatch");
    if (h.size() < 3)
        throw ParameterError("convergence_order needs at least 3 grids");
    ConvergenceReport rep;
    bool all_floor = true;
    for (double e : errors) all_floor = all_floor && e < convergence_floor;
    if (all_floor) {
        rep.floor = true;
        return rep;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) throw ParameterError("convergence_order: h must be positive");
        const double x = std::log(h[i]);
        const double y = std::log(std::max(errors[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

}  // namespace diracred
