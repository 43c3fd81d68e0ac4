#pragma once

#include <cmath>
#include <complex>

#include "diracred/types.hpp"

namespace diracred {

// Forward-mode derivative tracker over (x, y, t). Catalog states are built from
// entire functions, so propagating a complex value with its three partials gives
// closed-form derivative samples without hand-differentiating each expression.
struct Dual3 {
    complexd v{0.0, 0.0};
    complexd dx{0.0, 0.0};
    complexd dy{0.0, 0.0};
    complexd dt{0.0, 0.0};

    Dual3() = default;
    Dual3(complexd value) : v(value) {}
    Dual3(double value) : v(value, 0.0) {}
    Dual3(complexd value, complexd px, complexd py, complexd pt)
        : v(value), dx(px), dy(py), dt(pt) {}

    static Dual3 var_x(double x) { return {complexd(x, 0.0), 1.0, 0.0, 0.0}; }
    static Dual3 var_y(double y) { return {complexd(y, 0.0), 0.0, 1.0, 0.0}; }
    static Dual3 var_t(double t) { return {complexd(t, 0.0), 0.0, 0.0, 1.0}; }
};

inline Dual3 operator+(const Dual3& a, const Dual3& b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dt + b.dt};
}
inline Dual3 operator-(const Dual3& a, const Dual3& b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dt - b.dt};
}
inline Dual3 operator-(const Dual3& a) { return {-a.v, -a.dx, -a.dy, -a.dt}; }
inline Dual3 operator*(const Dual3& a, const Dual3& b) {
    return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy,
            a.dt * b.v + a.v * b.dt};
}
inline Dual3 operator/(const Dual3& a, const Dual3& b) {
    const complexd q = a.v / b.v;
    const complexd inv = 1.0 / b.v;
    return {q, (a.dx - q * b.dx) * inv, (a.dy - q * b.dy) * inv, (a.dt - q * b.dt) * inv};
}

inline Dual3 chain(complexd f, complexd fprime, const Dual3& u) {
    return {f, fprime * u.dx, fprime * u.dy, fprime * u.dt};
}

inline Dual3 exp(const Dual3& u) {
    const complexd e = std::exp(u.v);
    return chain(e, e, u);
}
inline Dual3 sin(const Dual3& u) { return chain(std::sin(u.v), std::cos(u.v), u); }
inline Dual3 cos(const Dual3& u) { return chain(std::cos(u.v), -std::sin(u.v), u); }
inline Dual3 sinh(const Dual3& u) { return chain(std::sinh(u.v), std::cosh(u.v), u); }
inline Dual3 cosh(const Dual3& u) { return chain(std::cosh(u.v), std::sinh(u.v), u); }
inline Dual3 tanh(const Dual3& u) {
    const complexd th = std::tanh(u.v);
    return chain(th, 1.0 - th * th, u);
}
inline Dual3 conj(const Dual3& u) {
    // Valid for our use: u is built from real grid coordinates, so conjugation
    // commutes with the (real-direction) partials.
    return {std::conj(u.v), std::conj(u.dx), std::conj(u.dy), std::conj(u.dt)};
}

}  // namespace diracred
