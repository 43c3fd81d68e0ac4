#include "diracred/soliton.hpp"

#include "diracred/dual.hpp"

namespace diracred {

namespace {

double denom(const SolitonParams& p, double x, double t) {
    const double k = p.kappa();
    return p.m * p.m + k * k * std::cosh(2.0 * p.omega * t) +
           p.omega * p.omega * std::cosh(2.0 * k * x);
}

}  // namespace

SolitonFields soliton_fields(const SolitonParams& p) {
    const double k = p.kappa();
    SolitonFields out;
    out.D = ScalarField([p](const Point& pt) { return complexd{denom(p, pt.x, pt.t), 0.0}; },
                        true);
    out.a1 = ScalarField(
        [p, k](const Point& pt) {
            const double ch = std::cosh(p.omega * pt.t);
            return complexd{p.m * (-1.0 + 4.0 * k * k * ch * ch / denom(p, pt.x, pt.t)),
                            0.0};
        },
        true);
    return out;
}

std::pair<SampledBispinor, SampledBispinor> soliton_bispinors(const SolitonParams& p,
                                                              double phi,
                                                              const GridTX& grid) {
    grid.validate();
    const double m = p.m, w = p.omega, k = p.kappa();
    const complexd i{0.0, 1.0};
    const complexd ep = std::exp(complexd{0.0, phi});

    SampledBispinor psi1, psi2;
    psi1.resize(grid.size(), true, false, true);
    psi2.resize(grid.size(), true, false, true);

    for (int kk = 0; kk < grid.size(); ++kk) {
        const Point pt = grid.point(kk);
        const Dual3 X = Dual3::var_x(pt.x);
        const Dual3 T = Dual3::var_t(pt.t);

        // Time-reflected profiles: sinh(omega t) enters with a flipped sign.
        const Dual3 ch = cosh(w * T);
        const Dual3 sh = -sinh(w * T);
        const Dual3 chx = cosh(k * X);
        const Dual3 shx = sinh(k * X);
        const Dual3 D = m * m + (k * k) * cosh(2.0 * w * T) + (w * w) * cosh(2.0 * k * X);

        const Dual3 amp = (m * ch + Dual3(i) * w * sh) / D;       // first state
        const Dual3 bmp = (Dual3(-i) * m * ch - w * sh) / D;      // second state
        const Dual3 loc1 = Dual3(-i) * k * ch * chx / D;

        const Dual3 c1[4] = {shx * amp, loc1, Dual3(ep) * loc1, Dual3(ep) * shx * amp};
        const Dual3 loc2 = k * ch * chx / D;
        const Dual3 c2[4] = {loc2, bmp * shx, Dual3(ep) * bmp * shx, Dual3(ep) * loc2};

        for (int c = 0; c < 4; ++c) {
            psi1.v[c][kk] = c1[c].v;
            psi1.dx[c][kk] = c1[c].dx;
            psi1.dt[c][kk] = c1[c].dt;
            psi2.v[c][kk] = c2[c].v;
            psi2.dx[c][kk] = c2[c].dx;
            psi2.dt[c][kk] = c2[c].dt;
        }
    }
    return {std::move(psi1), std::move(psi2)};
}

ScalarField soliton_d2(const SolitonParams& p, double Delta_const) {
    const double k = p.kappa();
    return ScalarField(
        [p, k, Delta_const](const Point& pt) {
            const double ch = std::cosh(p.omega * pt.t);
            const double Q = 4.0 * p.m * k * k * ch * ch / denom(p, pt.x, pt.t);
            return complexd{-(4.0 * Delta_const + 3.0 * p.m - 3.0 * Q), 0.0};
        },
        true);
}

ReducedPair soliton_pair(const SolitonParams& p, double Delta_const, double phi) {
    const SolitonFields f = soliton_fields(p);
    ScalarField d1([a1 = f.a1](const Point& pt) { return -a1(pt); }, true);
    return ReducedPair{Potential2x2(f.a1, ScalarField{}, std::move(d1)),
                       Potential2x2(f.a1, ScalarField{}, soliton_d2(p, Delta_const)),
                       ReductionParams{pi_v / 4.0, phi, 1}};
}

SpinOrbitFields soliton_mu_lambda(const SolitonParams& p, double Delta_const) {
    const double k = p.kappa();
    auto Q = [p, k](const Point& pt) {
        const double ch = std::cosh(p.omega * pt.t);
        return 4.0 * p.m * k * k * ch * ch / denom(p, pt.x, pt.t);
    };
    SpinOrbitFields out;
    out.Delta = ScalarField(complexd{Delta_const, 0.0}, true);
    out.mu = ScalarField(
        [Q, Delta_const, p](const Point& pt) {
            return complexd{-Delta_const - p.m + Q(pt), 0.0};
        },
        true);
    out.lambda = ScalarField(
        [Q, Delta_const, p](const Point& pt) {
            return complexd{2.0 * (Delta_const + p.m - Q(pt)), 0.0};
        },
        true);
    return out;
}

}  // namespace diracred
