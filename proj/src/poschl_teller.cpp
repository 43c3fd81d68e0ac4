#include "diracred/poschl_teller.hpp"

#include <cmath>

#include "diracred/jacobi.hpp"
#include "diracred/reduction.hpp"

namespace diracred {

namespace {

void validate_params(const PoschlTellerParams& p) {
    if (!(p.delta > 0.0)) throw ParameterError("delta must be positive");
    if (p.n < 0) throw ParameterError("band index must be nonnegative");
}

// Raw squared energy, negative when no real bound energy exists at (n, k_y).
double energy_squared(const PoschlTellerParams& p) {
    if (p.n == 0) return 0.0;
    const double d2 = p.delta * p.delta;
    const double gap = 4.0 * d2 - p.n;
    const double ratio = p.k_y == 0.0 ? 0.0 : 2.0 * p.delta * p.k_y / gap;
    return 2.0 * (p.n - p.n * static_cast<double>(p.n) / (8.0 * d2)) *
           (1.0 - ratio * ratio);
}

// Energy formula without admissibility checks; callers guard the domain.
double energy_value(const PoschlTellerParams& p) {
    return std::sqrt(std::max(energy_squared(p), 0.0));
}

}  // namespace

PtAdmissibility pt_admissible(const PoschlTellerParams& p) {
    validate_params(p);
    const double cap = 4.0 * p.delta * p.delta;
    const double btol = 1e-12 * std::max(1.0, cap);
    PtAdmissibility out;
    out.boundary = std::abs(cap - p.n) <= btol;
    if (p.n > cap + btol) {
        out.reason = "n > 4 delta^2";
        return out;
    }
    if (!(std::abs(p.k_y) < 2.0 * p.delta)) {
        out.reason = "|k_y| >= 2 delta";
        return out;
    }
    if (out.boundary && p.k_y != 0.0) {
        out.reason = "n = 4 delta^2 with k_y != 0";
        return out;
    }
    const double e2 = energy_squared(p);
    if (e2 < -btol) {
        out.reason = "(2 delta k_y)^2 > (4 delta^2 - n)^2 (no real bound energy)";
        return out;
    }
    // The exponent realness conditions; equality (exponent zero) is the
    // boundary case, kept admissible per the closed-interval range statement.
    const double s2 = (p.k_y - 2.0 * p.delta) * (p.k_y - 2.0 * p.delta) - e2;
    const double r2 = (p.k_y + 2.0 * p.delta) * (p.k_y + 2.0 * p.delta) - e2;
    const double itol = 1e-12 * std::max(1.0, (2.0 * p.delta + std::abs(p.k_y)) *
                                                  (2.0 * p.delta + std::abs(p.k_y)));
    if (s2 < -itol) {
        out.reason = "|k_y - 2 delta| <= |E_n|";
        return out;
    }
    if (r2 < -itol) {
        out.reason = "|k_y + 2 delta| <= |E_n|";
        return out;
    }
    out.admissible = true;
    const double gap = cap - p.n;
    out.square_integrable =
        !out.boundary &&
        gap * gap > 8.0 * p.delta * p.delta * p.delta * std::abs(p.k_y);
    return out;
}

double pt_energy(const PoschlTellerParams& p, bool negative_branch) {
    const PtAdmissibility adm = pt_admissible(p);
    if (!adm.admissible) throw NotAdmissible(adm.reason);
    const double e = energy_value(p);
    return negative_branch ? -e : e;
}

SampledSpinor pt_mode(const PoschlTellerParams& p, const Grid1D& grid) {
    grid.validate();
    const PtAdmissibility adm = pt_admissible(p);
    if (!adm.admissible) throw NotAdmissible(adm.reason);
    if (p.n == 0) throw ZeroEnergyMode{};
    if (!adm.square_integrable)
        throw NotAdmissible(
            "(4 delta^2 - n)^2 <= 8 delta^3 |k_y| (profile not square-integrable)");

    const double delta = p.delta;
    const double e = energy_value(p);
    const double gap = 4.0 * delta * delta - p.n;
    const double shift = 4.0 * delta * delta * delta * p.k_y / gap;
    const double sigma = 0.5 * gap - shift;
    const double rho = 0.5 * gap + shift;
    const double alpha = 2.0 * rho, beta = 2.0 * sigma;

    SampledSpinor out;
    out.resize(grid.n, true, false, false);
    const complexd minus_i_over_e{0.0, -1.0 / e};
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        const double u = x / (2.0 * delta);
        const double z = std::tanh(u);
        // log((1 +- z)/2) without cancellation at large |u|
        const double common = std::abs(u) + std::log1p(std::exp(-2.0 * std::abs(u)));
        const double lnp = u - common;
        const double lnm = -u - common;

        const double h = std::exp(sigma * lnp + rho * lnm);
        const double P = jacobi_polynomial(p.n, alpha, beta, z);
        const double P1 = jacobi_derivative(p.n, alpha, beta, z);
        const double P2 = jacobi_second_derivative(p.n, alpha, beta, z);

        const double zp = 4.0 * std::exp(lnp + lnm) / (2.0 * delta);  // (1 - z^2)/(2 delta)
        const double zpp = -z * zp / delta;
        const double L = ((sigma - rho) - (sigma + rho) * z) / (2.0 * delta);
        const double Lp = -(sigma + rho) * zp / (2.0 * delta);

        const double f = h * P;
        const double fp = f * L + h * P1 * zp;
        const double fpp =
            fp * L + f * Lp + h * L * P1 * zp + h * P2 * zp * zp + h * P1 * zpp;

        const double M = p.k_y + 2.0 * delta * z;
        const double Mp = 2.0 * delta * zp;

        out.v[1][j] = f;
        out.dx[1][j] = fp;
        out.v[0][j] = minus_i_over_e * (fp + M * f);
        out.dx[0][j] = minus_i_over_e * (fpp + Mp * f + M * fp);
    }
    normalize(out, grid);
    return out;
}

Potential2x2 pt_effective_1d(double delta, double k_y) {
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    ScalarField b(
        [delta, k_y](const Point& p) {
            return complexd{0.0, -(k_y + 2.0 * delta * std::tanh(p.x / (2.0 * delta)))};
        },
        false);
    return Potential2x2(ScalarField{}, std::move(b), ScalarField{});
}

std::vector<BandPoint> pt_band_structure(double delta, std::span<const int> n_list,
                                         std::span<const double> k_y_grid) {
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    std::vector<BandPoint> table;
    for (int n : n_list) {
        for (double k_y : k_y_grid) {
            if (n == 0) {
                if (std::abs(k_y) < 2.0 * delta) table.push_back({0, k_y, 0.0});
                continue;
            }
            const PoschlTellerParams p{delta, k_y, n};
            const PtAdmissibility adm = pt_admissible(p);
            if (!adm.admissible || !adm.square_integrable) continue;
            table.push_back({n, k_y, energy_value(p)});
        }
    }
    return table;
}

ReducedPair pt_disorder_pair(double delta1, double delta2,
                             const ReductionParams& params) {
    if (!(delta1 > 0.0) || !(delta2 > 0.0))
        throw ParameterError("delta must be positive");
    params.validate();
    ScalarField b1(
        [delta1](const Point& p) {
            return complexd{0.0, -2.0 * delta1 * std::tanh(p.x / (2.0 * delta1))};
        },
        false);
    ScalarField b2(
        [delta2](const Point& p) {
            return complexd{-2.0 * delta2 * std::tanh(p.y / (2.0 * delta2)), 0.0};
        },
        false);
    Potential2x2 first(ScalarField{}, std::move(b1), ScalarField{});
    Potential2x2 second(ScalarField{}, std::move(b2), ScalarField{});
    return ReducedPair{std::move(first), std::move(second), params};
}

PtDisorderPotential pt_disorder_potential(double delta1, double delta2,
                                          const ReductionParams& params) {
    if (params.epsilon != -1)
        throw SchemeMismatch("disorder layout requires epsilon = -1");
    ReducedPair pair = pt_disorder_pair(delta1, delta2, params);
    // The way1 constraint a1 = d2, a2 = d1 holds identically (all four vanish);
    // the probe grid is a formality.
    const Grid2D probe{-4.0, 4.0, 9, -4.0, 4.0, 9};
    DisorderComponents comps = disorder_identify(pair, DisorderScheme::way1, probe);
    return PtDisorderPotential{assemble(pair), std::move(comps)};
}

}  // namespace diracred
