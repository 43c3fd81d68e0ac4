#include "diracred/disorder.hpp"

#include <cmath>
#include <sstream>

namespace diracred {

namespace {

// Largest magnitude a scheme constraint is compared against (floor 1).
double probe_scale(const ReducedPair& pair, const Grid2D& probe) {
    double s = 1.0;
    for (int k = 0; k < probe.size(); ++k) {
        const Point p = probe.point(k);
        s = std::max({s, std::abs(pair.first.a(p)), std::abs(pair.first.d(p)),
                      std::abs(pair.second.a(p)), std::abs(pair.second.d(p))});
    }
    return s;
}

void check_constraints(const ReducedPair& pair, DisorderScheme scheme,
                       const Grid2D& probe, double tol) {
    if (pair.params.epsilon != -1)
        throw SchemeMismatch("disorder layout requires epsilon = -1");
    if (scheme == DisorderScheme::way2 &&
        std::abs(pair.params.tau - pi_v / 4.0) > 1e-12)
        throw SchemeMismatch("way2 requires tau = pi/4");

    probe.validate();
    const double scale = probe_scale(pair, probe);
    double worst = 0.0;
    Point worst_p;
    for (int k = 0; k < probe.size(); ++k) {
        const Point p = probe.point(k);
        const complexd a1 = pair.first.a(p), d1 = pair.first.d(p);
        const complexd a2 = pair.second.a(p), d2 = pair.second.d(p);
        const double v = scheme == DisorderScheme::way1
                             ? std::max(std::abs(a1 - d2), std::abs(a2 - d1))
                             : std::abs(a1 + a2 - d1 - d2);
        if (v > worst) {
            worst = v;
            worst_p = p;
        }
    }
    if (worst > tol * scale) {
        std::ostringstream msg;
        msg << (scheme == DisorderScheme::way1 ? "way1 constraint a1 = d2, a2 = d1"
                                               : "way2 constraint a1 + a2 = d1 + d2")
            << " violated: relative deviation " << worst / scale << " at ("
            << worst_p.x << ", " << worst_p.y << ")";
        throw SchemeMismatch(msg.str());
    }
}

ScalarField combine(ScalarField u, ScalarField v, complexd cu, complexd cv,
                    bool hermitian = false) {
    return ScalarField(
        [u = std::move(u), v = std::move(v), cu, cv](const Point& p) {
            return cu * u(p) + cv * v(p);
        },
        hermitian);
}

ScalarField conj_scaled(ScalarField u, ScalarField v, complexd cu, complexd cv) {
    return ScalarField(
        [u = std::move(u), v = std::move(v), cu, cv](const Point& p) {
            return std::conj(cu * u(p) + cv * v(p));
        },
        false);
}

}  // namespace

DisorderComponents disorder_identify(const ReducedPair& pair, DisorderScheme scheme,
                                     const Grid2D& probe, double tol) {
    check_constraints(pair, scheme, probe, tol);

    const double c2 = std::cos(pair.params.tau) * std::cos(pair.params.tau);
    const double s2 = std::sin(pair.params.tau) * std::sin(pair.params.tau);
    const double s2t = std::sin(2.0 * pair.params.tau);
    const complexd em = std::exp(complexd{0.0, -pair.params.phi});

    const ScalarField& b1 = pair.first.b;
    const ScalarField& b2 = pair.second.b;
    const ScalarField& d1 = pair.first.d;
    const ScalarField& d2 = pair.second.d;

    DisorderComponents out;
    if (scheme == DisorderScheme::way1) {
        out.V_A = combine(d2, d1, c2, s2, true);
        out.V_B = combine(d1, d2, c2, s2, true);
        out.V = combine(b1, b2, c2, s2);
        out.V_prime = conj_scaled(b2, b1, -c2, -s2);
        out.W_A = combine(b1, b2, -0.5 * em * s2t, 0.5 * em * s2t);
        // W_B = -e^{-2 i phi} conj(W_A)
        out.W_B = conj_scaled(b1, b2, 0.5 * std::conj(em) * s2t,
                              -0.5 * std::conj(em) * s2t);
        out.W_plus = combine(d2, d1, 0.5 * em * s2t, -0.5 * em * s2t);
        out.w_minus = out.W_plus;
    } else {
        const ScalarField& a1 = pair.first.a;
        const ScalarField& a2 = pair.second.a;
        out.V_A = combine(d1, d2, 0.5, 0.5, true);
        out.V_B = out.V_A;
        out.V = combine(b1, b2, 0.5, 0.5);
        out.V_prime = conj_scaled(b1, b2, -0.5, -0.5);
        out.W_A = combine(b2, b1, 0.5 * em, -0.5 * em);
        out.W_B = conj_scaled(b1, b2, 0.5 * std::conj(em), -0.5 * std::conj(em));
        out.W_plus = combine(a1, a2, 0.5 * em, -0.5 * em);
        out.w_minus = combine(d2, d1, 0.5 * em, -0.5 * em);
    }
    return out;
}

Potential4x4 disorder_embed(const DisorderComponents& c) {
    return Potential4x4([c](const Point& p) {
        const complexd va = c.V_A(p), vb = c.V_B(p), v = c.V(p), vp = c.V_prime(p);
        const complexd wa = c.W_A(p), wb = c.W_B(p), wplus = c.W_plus(p),
                       wminus = c.w_minus(p);
        Matrix4cd m;
        m << va, v, wa, wplus,
            std::conj(v), vb, wminus, wb,
            std::conj(wa), std::conj(wminus), va, vp,
            std::conj(wplus), std::conj(wb), std::conj(vp), vb;
        return m;
    });
}

}  // namespace diracred
