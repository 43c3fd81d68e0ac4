#include "diracred/spin_orbit.hpp"

#include <cmath>
#include <string>

#include "diracred/poschl_teller.hpp"

namespace diracred {

Potential4x4 spin_orbit_assemble(const ScalarField& a1, const ScalarField& d1,
                                 const ScalarField& d2, double phi) {
    if (!a1.hermitian_entry() || !d1.hermitian_entry() || !d2.hermitian_entry())
        throw ParameterError("spin_orbit_assemble needs real-valued channel fields");
    const complexd em = std::exp(complexd{0.0, -phi});
    return Potential4x4([a1, d1, d2, em](const Point& p) {
        const double A = a1(p).real();
        const double D1 = d1(p).real(), D2 = d2(p).real();
        const double delta = 0.5 * A - 0.25 * (D1 + D2);
        const double mu = 0.5 * A + 0.25 * (D1 + D2);
        const double lambda = 0.5 * (D1 - D2);
        Matrix4cd m = Matrix4cd::Zero();
        m(0, 0) = mu + delta;
        m(1, 1) = mu - delta;
        m(2, 2) = mu - delta;
        m(3, 3) = mu + delta;
        m(1, 2) = em * lambda;
        m(2, 1) = std::conj(em) * lambda;
        return m;
    });
}

namespace {

// U^{-1} (v0, v1) with U = e^{i pi/4 sigma_1}: (v0 - i v1, -i v0 + v1) / sqrt(2).
void rotate_components(SampledSpinor& s) {
    const complexd i{0.0, 1.0};
    const double r = 1.0 / std::sqrt(2.0);
    for (auto arrays : {&s.v, &s.dx}) {
        VectorXcd top = ((*arrays)[0] - i * (*arrays)[1]) * r;
        VectorXcd bot = (-i * (*arrays)[0] + (*arrays)[1]) * r;
        (*arrays)[0] = std::move(top);
        (*arrays)[1] = std::move(bot);
    }
}

void check_channel(double delta, double k_y, int n, const std::string& channel) {
    const PtAdmissibility adm = pt_admissible({delta, k_y, n});
    if (!adm.admissible) throw NotAdmissible(channel + ": " + adm.reason);
    if (!adm.square_integrable)
        throw NotAdmissible(channel +
                            ": (4 delta^2 - n)^2 <= 8 delta^3 |k_y| "
                            "(profile not square-integrable)");
}

}  // namespace

Scenario2Model scenario2_model(double delta, double k_y, double V2, int n,
                               const Grid1D& grid) {
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    check_channel(delta, k_y, n, "psi channel");
    check_channel(delta, k_y - V2, n, "xi channel (k_y - V2)");
    if (n == 0) throw ZeroEnergyMode{};

    auto m1 = [delta, k_y](const Point& p) {
        return complexd{k_y + 2.0 * delta * std::tanh(p.x / (2.0 * delta)), 0.0};
    };
    ScalarField m1_field(m1, true);
    ScalarField m1_neg([m1](const Point& p) { return -m1(p); }, true);
    ScalarField m1_neg_shift([m1, V2](const Point& p) { return -m1(p) + 2.0 * V2; },
                             true);

    Scenario2Model out{
        ReducedPair{Potential2x2(m1_field, ScalarField{}, m1_neg),
                    Potential2x2(m1_field, ScalarField{}, m1_neg_shift),
                    ReductionParams{pi_v / 4.0, pi_v / 2.0, 1}},
        SpinOrbitFields{
            ScalarField([delta, k_y, V2](const Point& p) {
                            return complexd{k_y - 0.5 * V2 +
                                                2.0 * delta *
                                                    std::tanh(p.x / (2.0 * delta)),
                                            0.0};
                        },
                        true),
            ScalarField(complexd{0.5 * V2, 0.0}, true),
            ScalarField(complexd{-V2, 0.0}, true)},
        pt_mode({delta, k_y, n}, grid),
        pt_mode({delta, k_y - V2, n}, grid),
        pt_energy({delta, k_y, n}),
        pt_energy({delta, k_y - V2, n}),
        0.0};
    out.frequency_xi = out.energy_xi + V2;

    rotate_components(out.psi);
    rotate_components(out.xi);
    const complexd i{0.0, 1.0};
    for (int c = 0; c < 2; ++c) {
        out.psi.dt[c] = -i * out.energy_psi * out.psi.v[c];
        out.xi.dt[c] = -i * out.frequency_xi * out.xi.v[c];
    }
    return out;
}

}  // namespace diracred
