#pragma once

#include <array>
#include <cmath>

#include "diracred/grids.hpp"
#include "diracred/types.hpp"

namespace diracred {

// State sampled on a grid: NC component value arrays plus optional closed-form
// partial derivative arrays (empty when not supplied).
template <int NC>
struct SampledState {
    std::array<VectorXcd, NC> v;
    std::array<VectorXcd, NC> dx;
    std::array<VectorXcd, NC> dy;
    std::array<VectorXcd, NC> dt;

    int size() const { return static_cast<int>(v[0].size()); }
    bool has_dx() const { return dx[0].size() == v[0].size() && v[0].size() > 0; }
    bool has_dy() const { return dy[0].size() == v[0].size() && v[0].size() > 0; }
    bool has_dt() const { return dt[0].size() == v[0].size() && v[0].size() > 0; }

    void resize(int n, bool with_dx, bool with_dy, bool with_dt) {
        for (int c = 0; c < NC; ++c) {
            v[c].setZero(n);
            if (with_dx) dx[c].setZero(n);
            if (with_dy) dy[c].setZero(n);
            if (with_dt) dt[c].setZero(n);
        }
    }

    // Multiply everything (values and derivatives) by a constant.
    void scale(complexd s) {
        for (int c = 0; c < NC; ++c) {
            v[c] *= s;
            if (dx[c].size()) dx[c] *= s;
            if (dy[c].size()) dy[c] *= s;
            if (dt[c].size()) dt[c] *= s;
        }
    }
};

using SampledSpinor = SampledState<2>;
using SampledBispinor = SampledState<4>;

template <int NC, class Grid>
double state_norm(const SampledState<NC>& s, const Grid& g) {
    if (s.size() != g.size()) throw ParameterError("state/grid size mismatch");
    double acc = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        double dens = 0.0;
        for (int c = 0; c < NC; ++c) dens += std::norm(s.v[c][k]);
        acc += g.weight(k) * dens;
    }
    return std::sqrt(acc);
}

template <int NC, class Grid>
complexd overlap(const SampledState<NC>& a, const SampledState<NC>& b, const Grid& g) {
    if (a.size() != g.size() || b.size() != g.size())
        throw ParameterError("state/grid size mismatch");
    complexd acc{0.0, 0.0};
    for (int k = 0; k < g.size(); ++k) {
        complexd dot{0.0, 0.0};
        for (int c = 0; c < NC; ++c) dot += std::conj(a.v[c][k]) * b.v[c][k];
        acc += g.weight(k) * dot;
    }
    return acc;
}

template <int NC, class Grid>
void normalize(SampledState<NC>& s, const Grid& g) {
    const double nrm = state_norm(s, g);
    if (!(nrm > 0.0)) throw NumericsError("cannot normalize a zero state");
    s.scale(complexd{1.0 / nrm, 0.0});
}

}  // namespace diracred
