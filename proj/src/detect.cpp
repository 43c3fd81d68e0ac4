#include "diracred/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace diracred {

namespace {

struct AngleEstimate {
    ReductionParams params;
    double phase_spread = 0.0;
    int points_used = 0;
};

double wrap_2pi(double phi) {
    double w = std::fmod(phi, 2.0 * pi_v);
    if (w < 0.0) w += 2.0 * pi_v;
    return w;
}

// Per-point sample scale: the largest entry magnitude (floor guards zero matrices).
double sample_scale(const Matrix4cd& m) {
    return std::max(m.cwiseAbs().maxCoeff(), 1e-300);
}

// Estimates (tau, phi) from the witness ratios
//   (V11 - V22 diag differences) = 2 cot(2 tau) e^{i phi} * cross-entry.
AngleEstimate estimate_angles(std::span<const Matrix4cd> mats, int epsilon) {
    double global_scale = 1e-300;
    for (const auto& m : mats) global_scale = std::max(global_scale, sample_scale(m));
    const double usable = 1e-13 * global_scale;

    // r_k = cot(2 tau) e^{i phi}; weights follow the witness magnitude (least squares).
    std::vector<complexd> r;
    std::vector<double> w;
    std::vector<complexd> witness;  // the cross-entry backing each estimate
    auto collect = [&](auto num, auto cross) {
        r.clear();
        w.clear();
        witness.clear();
        for (const auto& m : mats) {
            const complexd e = cross(m);
            if (std::abs(e) <= usable) continue;
            r.push_back(num(m) / (2.0 * e));
            w.push_back(std::norm(e));
            witness.push_back(e);
        }
        return !r.empty();
    };

    const double eps = epsilon;
    const bool d_channel = collect(
        [](const Matrix4cd& m) { return m(1, 1).real() - m(2, 2).real(); },
        [eps](const Matrix4cd& m) { return eps * m(1, 2); });
    if (!d_channel) {
        const bool a_channel = collect(
            [](const Matrix4cd& m) { return m(0, 0).real() - m(3, 3).real(); },
            [](const Matrix4cd& m) { return m(0, 3); });
        if (!a_channel)
            throw UnderdeterminedAngle(
                "both mixing witnesses (entries (2,3) and (1,4)) vanish on every sample "
                "point; the mixing angle cannot be recovered");
    }

    double wsum = 0.0;
    complexd r_mean{0.0, 0.0};
    for (size_t k = 0; k < r.size(); ++k) {
        r_mean += w[k] * r[k];
        wsum += w[k];
    }
    r_mean /= wsum;

    double phi = 0.0;
    double g = 0.0;  // cot(2 tau), canonical branch keeps it >= 0
    if (std::abs(r_mean) > 1e-6) {
        phi = wrap_2pi(std::arg(r_mean));
        g = std::abs(r_mean);
    } else {
        // Near tau = pi/4 the ratio magnitude is too small to carry a reliable
        // phase. Recover e^{-2 i phi} from the squared witness direction, then
        // fix the half-turn by the sign convention V23 > 0 (V14 > 0 fallback).
        complexd q{0.0, 0.0};
        for (size_t k = 0; k < witness.size(); ++k) {
            const complexd e = witness[k] / std::abs(witness[k]);
            q += w[k] * e * e;
        }
        phi = wrap_2pi(-0.5 * std::arg(q));
        // Project the mean ratio onto the recovered phase ray; the sign picks
        // between the two half-turn candidates.
        double signed_g = (r_mean * std::exp(complexd{0.0, -phi})).real();
        if (signed_g < -1e-12) {
            phi = wrap_2pi(phi + pi_v);
            signed_g = -signed_g;
        } else if (std::abs(signed_g) <= 1e-12) {
            // Landed on tau = pi/4 exactly: pick the half-turn that makes the
            // heaviest witness sample positive after unwinding the phase.
            size_t kmax = 0;
            for (size_t k = 1; k < witness.size(); ++k)
                if (w[k] > w[kmax]) kmax = k;
            if ((std::exp(complexd{0.0, phi}) * witness[kmax]).real() < 0.0)
                phi = wrap_2pi(phi + pi_v);
            signed_g = 0.0;
        }
        g = std::max(signed_g, 0.0);
    }

    const double two_tau = std::atan2(1.0, g);
    AngleEstimate est;
    est.params.tau = 0.5 * two_tau;
    est.params.phi = phi;
    est.params.epsilon = epsilon;
    est.points_used = static_cast<int>(r.size());
    if (std::abs(std::sin(two_tau)) <= tol_degenerate)
        throw UnderdeterminedAngle("recovered angle lies in the degenerate branch "
                                   "|sin 2 tau| <= tol_degenerate");

    const double mean_arg = std::arg(r_mean);
    for (const complexd& rk : r) {
        if (std::abs(rk) <= 1e-9) continue;
        double dev = std::abs(std::remainder(std::arg(rk) - mean_arg, 2.0 * pi_v));
        est.phase_spread = std::max(est.phase_spread, dev);
    }
    return est;
}

// Channel blocks at one point, inverted from the assembled entry formulas.
std::pair<Matrix2cd, Matrix2cd> extract_channels_at(const Matrix4cd& m,
                                                    const ReductionParams& params) {
    const double s2t = std::sin(2.0 * params.tau);
    const double eps = params.epsilon;
    const complexd ep = std::exp(complexd{0.0, params.phi});

    const double a_sum = m(0, 0).real() + m(3, 3).real();
    const complexd a_diff = 2.0 * ep * m(0, 3) / s2t;
    const double d_sum = m(1, 1).real() + m(2, 2).real();
    const complexd d_diff = 2.0 * eps * ep * m(1, 2) / s2t;
    const complexd b_sum = m(0, 1) + eps * std::conj(m(2, 3));
    const complexd b_diff = 2.0 * eps * ep * m(0, 2) / s2t;

    const double a1 = 0.5 * (a_sum + a_diff.real()), a2 = 0.5 * (a_sum - a_diff.real());
    const double d1 = 0.5 * (d_sum + d_diff.real()), d2 = 0.5 * (d_sum - d_diff.real());
    const complexd b1 = 0.5 * (b_sum + b_diff), b2 = 0.5 * (b_sum - b_diff);

    Matrix2cd v1, v2;
    v1 << a1, b1, std::conj(b1), d1;
    v2 << a2, b2, std::conj(b2), d2;
    return {v1, v2};
}

// Relative size of the redundant-relation residuals at one point. These span
// exactly the constraints a 4x4 Hermitian field must satisfy to be assembled
// at the given angles, so any corruption shows up here at its own magnitude.
double point_violation(const Matrix4cd& m, const ReductionParams& params) {
    const double scale = sample_scale(m);
    const double g = std::cos(2.0 * params.tau) / std::sin(2.0 * params.tau);
    const double eps = params.epsilon;
    const complexd ep = std::exp(complexd{0.0, params.phi});
    const complexd em = std::conj(ep);

    double worst = (m - m.adjoint()).cwiseAbs().maxCoeff();
    // Diagonal split against the cross-entry witnesses.
    worst = std::max(worst,
                     std::abs((m(0, 0) - m(3, 3)) - 2.0 * g * ep * m(0, 3)));
    worst = std::max(worst,
                     std::abs((m(1, 1) - m(2, 2)) - 2.0 * eps * g * ep * m(1, 2)));
    // Dependent entry (2,4) locked to (1,3).
    worst = std::max(worst, std::abs(m(1, 3) - eps * em * em * std::conj(m(0, 2))));
    // Off-diagonal split: the (1,2)/(3,4) difference is locked to the (1,3)
    // cross-entry by the same cot(2 tau) ratio as the diagonals.
    worst = std::max(worst, std::abs((m(0, 1) - eps * std::conj(m(2, 3))) -
                                     2.0 * eps * g * ep * m(0, 2)));
    // The (1,4) and (2,3) entries must sit on the e^{-i phi} ray (real V14, V23).
    worst = std::max(worst, std::abs((ep * m(0, 3)).imag()));
    worst = std::max(worst, std::abs((ep * m(1, 2)).imag()));
    return worst / scale;
}

}  // namespace

std::pair<ReductionParams, bool> canonical_branch(const ReductionParams& params) {
    if (std::cos(2.0 * params.tau) >= 0.0) return {params, false};
    ReductionParams out = params;
    out.tau = pi_v / 2.0 - params.tau;
    out.phi = std::fmod(params.phi + pi_v, 2.0 * pi_v);
    if (out.phi < 0.0) out.phi += 2.0 * pi_v;
    return {out, true};
}

ReducedPair extract_pair(const Potential4x4& V, const ReductionParams& params) {
    params.validate();
    if (std::abs(std::sin(2.0 * params.tau)) <= tol_degenerate)
        throw ParameterError("channel extraction requires |sin 2 tau| > tol_degenerate");
    auto field = [&](int which, int row, int col, bool herm) {
        return ScalarField(
            [V, params, which, row, col](const Point& p) {
                const auto ch = extract_channels_at(V(p), params);
                return which == 0 ? ch.first(row, col) : ch.second(row, col);
            },
            herm);
    };
    Potential2x2 first(field(0, 0, 0, true), field(0, 0, 1, false), field(0, 1, 1, true));
    Potential2x2 second(field(1, 0, 0, true), field(1, 0, 1, false), field(1, 1, 1, true));
    return ReducedPair{std::move(first), std::move(second), params};
}

static DetectResult detect_core(std::span<const Point> points,
                                std::span<const Matrix4cd> mats,
                                const Potential4x4* source, int epsilon, double tol) {
    if (points.empty() || mats.size() != points.size())
        throw ParameterError("detect needs a nonempty sample set with one matrix per point");
    if (epsilon != 1 && epsilon != -1) throw ParameterError("epsilon must be +1 or -1");

    const AngleEstimate est = estimate_angles(mats, epsilon);

    double worst = 0.0;
    size_t worst_k = 0;
    for (size_t k = 0; k < mats.size(); ++k) {
        const double v = point_violation(mats[k], est.params);
        if (v > worst) {
            worst = v;
            worst_k = k;
        }
    }
    if (worst > tol) {
        std::ostringstream msg;
        const Point& p = points[worst_k];
        msg << "potential is not of the assembled shape: worst relative violation "
            << worst << " at sample point (" << p.x << ", " << p.y << ", " << p.t
            << "), tolerance " << tol;
        throw NotReducible(msg.str(), worst);
    }

    DetectResult res;
    res.params = est.params;
    res.worst_violation = worst;
    res.phase_spread = est.phase_spread;
    res.points_used = est.points_used;
    if (source) res.pair = extract_pair(*source, est.params);
    return res;
}

DetectResult detect(const Potential4x4& V, int epsilon,
                    std::span<const Point> sample_points, double tol) {
    std::vector<Matrix4cd> mats;
    mats.reserve(sample_points.size());
    for (const Point& p : sample_points) mats.push_back(V(p));
    return detect_core(sample_points, mats, &V, epsilon, tol);
}

DetectResult detect_sampled(std::span<const Point> points,
                            std::span<const Matrix4cd> mats, int epsilon, double tol) {
    // Channel fields evaluate through a lookup over the stored samples; they are
    // defined at the sampled points only (nearest stored point wins).
    DetectResult res = detect_core(points, mats, nullptr, epsilon, tol);
    std::vector<Point> pts(points.begin(), points.end());
    std::vector<Matrix4cd> ms(mats.begin(), mats.end());
    Potential4x4 lut([pts = std::move(pts), ms = std::move(ms)](const Point& p) {
        size_t best = 0;
        double bestd = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < pts.size(); ++k) {
            const double d = std::abs(pts[k].x - p.x) + std::abs(pts[k].y - p.y) +
                             std::abs(pts[k].t - p.t);
            if (d < bestd) {
                bestd = d;
                best = k;
            }
        }
        return ms[best];
    });
    res.pair = extract_pair(lut, res.params);
    return res;
}

}  // namespace diracred
