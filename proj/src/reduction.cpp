#include "diracred/reduction.hpp"

#include <cmath>

namespace diracred {

Matrix4cd assemble_matrix(complexd a1, complexd b1, complexd d1,
                          complexd a2, complexd b2, complexd d2,
                          const ReductionParams& params) {
    params.validate();
    const double c2 = std::cos(params.tau) * std::cos(params.tau);
    const double s2 = std::sin(params.tau) * std::sin(params.tau);
    const double s2t = std::sin(2.0 * params.tau);
    const double eps = params.epsilon;
    const complexd em = std::exp(complexd{0.0, -params.phi});

    Matrix4cd m;
    m(0, 0) = c2 * a1 + s2 * a2;
    m(0, 1) = c2 * b1 + s2 * b2;
    m(0, 2) = 0.5 * eps * em * (b1 - b2) * s2t;
    m(0, 3) = 0.5 * em * (a1 - a2) * s2t;
    m(1, 1) = c2 * d1 + s2 * d2;
    m(1, 2) = 0.5 * eps * em * (d1 - d2) * s2t;
    m(1, 3) = 0.5 * em * std::conj(b1 - b2) * s2t;
    m(2, 2) = s2 * d1 + c2 * d2;
    m(2, 3) = eps * std::conj(b2 * c2 + b1 * s2);
    m(3, 3) = s2 * a1 + c2 * a2;
    for (int i = 1; i < 4; ++i)
        for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    return m;
}

Potential4x4 assemble(const ReducedPair& pair) {
    pair.params.validate();
    return Potential4x4([pair](const Point& p) {
        return assemble_matrix(pair.first.a(p), pair.first.b(p), pair.first.d(p),
                               pair.second.a(p), pair.second.b(p), pair.second.d(p),
                               pair.params);
    });
}

ScalarField potential_entry(const Potential4x4& V, int i, int j) {
    if (i < 0 || i > 3 || j < 0 || j > 3)
        throw ParameterError("potential entry index out of range");
    return ScalarField([V, i, j](const Point& p) { return V(p)(i, j); },
                       /*hermitian_entry=*/i == j);
}

double hermiticity_defect(const Potential4x4& V, std::span<const Point> points) {
    double worst = 0.0;
    for (const Point& p : points) {
        const Matrix4cd m = V(p);
        const double d = (m - m.adjoint()).cwiseAbs().maxCoeff();
        worst = std::max(worst, d);
    }
    return worst;
}

FixedFormComponents::FixedFormComponents(ScalarField v11, ScalarField v12, ScalarField v13,
                                         ScalarField v14, ScalarField v22, ScalarField v23)
    : V11(std::move(v11)), V12(std::move(v12)), V13(std::move(v13)),
      V14(std::move(v14)), V22(std::move(v22)), V23(std::move(v23)) {
    if (!V11.hermitian_entry() || !V22.hermitian_entry())
        throw ParameterError("V11 and V22 must be real-valued");
    if (!V14.hermitian_entry() || !V23.hermitian_entry())
        throw ParameterError("V14 and V23 must be real-valued");
}

namespace {

double cot2tau_checked(const ReductionParams& params) {
    const double s = std::sin(2.0 * params.tau);
    if (std::abs(s) < 1e-12)
        throw ParameterError("degenerate angle: dependent entries require finite cot(2 tau)");
    return std::cos(2.0 * params.tau) / s;
}

}  // namespace

Potential4x4 fixed_form_potential(const FixedFormComponents& c, const ReductionParams& params) {
    params.validate();
    const double ct2 = cot2tau_checked(params);
    const double eps = params.epsilon;
    const complexd em = std::exp(complexd{0.0, -params.phi});
    return Potential4x4([c, ct2, eps, em](const Point& p) {
        const complexd v11 = c.V11(p), v12 = c.V12(p), v13 = c.V13(p);
        const complexd v14 = c.V14(p), v22 = c.V22(p), v23 = c.V23(p);
        Matrix4cd m;
        m(0, 0) = v11;
        m(0, 1) = v12;
        m(0, 2) = em * v13;
        m(0, 3) = em * v14;
        m(1, 1) = v22;
        m(1, 2) = em * v23;
        m(1, 3) = eps * em * std::conj(v13);
        m(2, 2) = v22 - 2.0 * eps * v23 * ct2;
        m(2, 3) = eps * std::conj(v12) - 2.0 * std::conj(v13) * ct2;
        m(3, 3) = v11 - 2.0 * v14 * ct2;
        for (int i = 1; i < 4; ++i)
            for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
        return m;
    });
}

ReducedPair reduced_pair_from_fixed_form(const FixedFormComponents& c,
                                         const ReductionParams& params) {
    params.validate();
    const double sn = std::sin(params.tau), cs = std::cos(params.tau);
    if (std::abs(sn) < 1e-12 || std::abs(cs) < 1e-12)
        throw ParameterError("degenerate angle: channel split requires finite tan and cot");
    const double eps = params.epsilon;
    // Channel weights on the correction block [[eps V14, V13], [V13^dag, V23]].
    const double w1 = eps * sn / cs;
    const double w2 = -eps * cs / sn;

    auto channel = [&](double w) {
        ScalarField a([c, w, eps](const Point& p) {
            return complexd{(c.V11(p) + w * eps * c.V14(p)).real(), 0.0};
        }, true);
        ScalarField b([c, w](const Point& p) { return c.V12(p) + w * c.V13(p); }, false);
        ScalarField d([c, w](const Point& p) {
            return complexd{(c.V22(p) + w * c.V23(p)).real(), 0.0};
        }, true);
        return Potential2x2(std::move(a), std::move(b), std::move(d));
    };
    return ReducedPair{channel(w1), channel(w2), params};
}

namespace {

template <int NC>
void lift_components(const SampledState<2>& in, SampledState<4>& out,
                     complexd f0, complexd f1, complexd f2, complexd f3,
                     int src0, int src1, int src2, int src3) {
    static_assert(NC == 4);
    const int n = in.size();
    const bool wdx = in.has_dx(), wdy = in.has_dy(), wdt = in.has_dt();
    out.resize(n, wdx, wdy, wdt);
    const complexd f[4] = {f0, f1, f2, f3};
    const int src[4] = {src0, src1, src2, src3};
    for (int c = 0; c < 4; ++c) {
        out.v[c] = f[c] * in.v[src[c]];
        if (wdx) out.dx[c] = f[c] * in.dx[src[c]];
        if (wdy) out.dy[c] = f[c] * in.dy[src[c]];
        if (wdt) out.dt[c] = f[c] * in.dt[src[c]];
    }
}

}  // namespace

SampledBispinor lift_first(const SampledSpinor& psi, const ReductionParams& params) {
    params.validate();
    const double c = std::cos(params.tau), s = std::sin(params.tau);
    const complexd ep = std::exp(complexd{0.0, params.phi});
    const double eps = params.epsilon;
    SampledBispinor out;
    lift_components<4>(psi, out, c, c, eps * ep * s, ep * s, 0, 1, 1, 0);
    return out;
}

SampledBispinor lift_second(const SampledSpinor& xi, const ReductionParams& params) {
    params.validate();
    const double c = std::cos(params.tau), s = std::sin(params.tau);
    const complexd ep = std::exp(complexd{0.0, params.phi});
    const double eps = params.epsilon;
    SampledBispinor out;
    lift_components<4>(xi, out, -s, -s, eps * ep * c, ep * c, 0, 1, 1, 0);
    return out;
}

std::pair<SampledBispinor, SampledBispinor> lift(const SampledSpinor* psi,
                                                 const SampledSpinor* xi,
                                                 const ReductionParams& params) {
    std::pair<SampledBispinor, SampledBispinor> out;
    if (psi) out.first = lift_first(*psi, params);
    if (xi) out.second = lift_second(*xi, params);
    return out;
}

Matrix4cd perturbation_block_matrix(const PerturbationBlock& b, const Point& p) {
    const complexd v1 = b.v1(p), v2 = b.v2(p), v3 = b.v3(p), v4 = b.v4(p);
    Matrix4cd m = Matrix4cd::Zero();
    m(0, 2) = v1;
    m(0, 3) = v2;
    m(1, 2) = v3;
    m(1, 3) = v4;
    m(2, 0) = std::conj(v1);
    m(2, 1) = std::conj(v3);
    m(3, 0) = std::conj(v2);
    m(3, 1) = std::conj(v4);
    return m;
}

Potential4x4 perturbation_lift(const PerturbationBlock& b, const ReductionParams& params) {
    params.validate();
    const Matrix4cd T = total_transform(params);
    const Matrix4cd Th = T.adjoint();
    return Potential4x4([b, T, Th](const Point& p) {
        return (T * perturbation_block_matrix(b, p) * Th).eval();
    });
}

}  // namespace diracred
