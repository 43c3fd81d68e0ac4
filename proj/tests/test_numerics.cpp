#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "diracred/discretize.hpp"
#include "diracred/eigensolve.hpp"
#include "diracred/grids.hpp"
#include "diracred/poschl_teller.hpp"
#include "diracred/residuals.hpp"
#include "diracred/sampled.hpp"

using namespace diracred;

namespace {
const double kDelta = 0.8660254037844386;

Potential2x2 mass_term(double m) {
    return Potential2x2(ScalarField(m), ScalarField(complexd{0.0, 0.0}), ScalarField(-m));
}
}  // namespace

TEST_CASE("discretized operators are Hermitian and match their band storage") {
    const Grid1D grid{-10.0, 10.0, 64};
    const Potential2x2 V = pt_effective_1d(0.9, 0.4);
    for (Scheme s : {Scheme::staggered, Scheme::central, Scheme::wilson}) {
        const DiscreteOperator op = discretize_1d(V, grid, s);
        const MatrixXcd dense = op.dense();
        CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
        // Band storage covers every entry: rebuild and compare.
        double worst = 0.0;
        for (int j = 0; j < op.dim(); ++j)
            for (int i = std::max(0, j - op.kd); i <= j; ++i)
                worst = std::max(worst,
                                 std::abs(op.band(op.kd + i - j, j) - dense(i, j)));
        CHECK(worst < 1e-15);
        // apply() agrees with the dense product.
        VectorXcd v(op.dim());
        for (int i = 0; i < op.dim(); ++i)
            v[i] = complexd{std::sin(0.1 * i), std::cos(0.2 * i)};
        CHECK((op.apply(v) - dense * v).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(discretize_1d(V, Grid1D{-1.0, 1.0, 4}), ParameterError);
}

TEST_CASE("free massive operator opens a clean gap of width 2m") {
    const double m = 1.0;
    const Grid1D grid{-20.0, 20.0, 2000};
    const DiscreteOperator op = discretize_1d(mass_term(m), grid);
    // Nothing lives strictly inside the gap...
    CHECK(eigen_in_gap(op, -0.9 * m, 0.9 * m, 1.0).states.empty());
    // ...and the first level above it sits at the edge (up to box momentum).
    const GapSpectrum edge = eigen_in_gap(op, 0.9 * m, 1.1 * m, 1.0);
    REQUIRE(!edge.states.empty());
    CHECK(std::abs(edge.states.front().energy - m) / m < 1e-3);
}

TEST_CASE("in-gap levels of the solvable channel match the closed forms") {
    const Grid1D grid{-60.0, 60.0, 2000};
    const DiscreteOperator op = discretize_1d(pt_effective_1d(kDelta, 0.0), grid);
    const double edge = 2.0 * kDelta;
    const GapSpectrum spec = eigen_in_gap(op, -0.95 * edge, 0.95 * edge);
    // +-E_1, +-E_2, and the zero mode. With a = d = 0 the discrete operator is
    // exactly chiral, so its spectrum is symmetric and the zero mode shows up
    // as a +- pair pinned at numerical zero: six states in the window.
    REQUIRE(spec.states.size() == 6);
    const std::array<double, 6> want{-1.6329931618554521, -1.2909944487358056, 0.0,
                                     0.0, 1.2909944487358056, 1.6329931618554521};
    for (int i = 0; i < 6; ++i)
        CHECK(std::abs(spec.states[i].energy - want[i]) < 5e-4);
    CHECK(std::abs(spec.states[2].energy) < 1e-6);
    CHECK(std::abs(spec.states[3].energy) < 1e-6);

    // The eigenvector of E_1 is the closed-form mode up to a global phase.
    const SampledSpinor mode = pt_mode({kDelta, 0.0, 1}, grid);
    const EigenPair& s = spec.states[4];
    complexd dot{0.0, 0.0};
    double vn = 0.0, mn = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        // Interleaved layout: upper component at 2j, lower at 2j + 1.
        dot += std::conj(s.vector[2 * j]) * mode.v[0][j] +
               std::conj(s.vector[2 * j + 1]) * mode.v[1][j];
        vn += std::norm(s.vector[2 * j]) + std::norm(s.vector[2 * j + 1]);
        mn += std::norm(mode.v[0][j]) + std::norm(mode.v[1][j]);
    }
    CHECK(std::abs(dot) / std::sqrt(vn * mn) > 0.999);
    // Bound states occupy a vanishing fraction of the box.
    CHECK(s.participation_ratio < 0.25 * grid.n);
}

TEST_CASE("dense and banded eigensolver paths agree") {
    const Grid1D grid{-30.0, 30.0, 700};
    const DiscreteOperator op = discretize_1d(pt_effective_1d(kDelta, 0.5), grid);
    const double edge = std::min(std::abs(0.5 - 2.0 * kDelta), std::abs(0.5 + 2.0 * kDelta));
    const GapSpectrum banded = eigen_in_gap(op, -0.95 * edge, 0.95 * edge);
    const GapSpectrum dense = eigen_in_gap(op, -0.95 * edge, 0.95 * edge, 0.5, true);
    REQUIRE(banded.states.size() == dense.states.size());
    for (std::size_t i = 0; i < banded.states.size(); ++i)
        CHECK(std::abs(banded.states[i].energy - dense.states[i].energy) < 1e-10);
    CHECK_THROWS_AS(eigen_in_gap(op, 1.0, -1.0), ParameterError);
}

TEST_CASE("level multiplicity separates the three difference schemes") {
    const Grid1D grid{-60.0, 60.0, 1000};
    const double edge = 2.0 * kDelta;
    const Potential2x2 V = pt_effective_1d(kDelta, 0.0);
    auto count = [&](Scheme s) {
        return eigen_in_gap(discretize_1d(V, grid, s), -0.95 * edge, 0.95 * edge)
            .states.size();
    };
    // Staggered: the five physical levels plus the chiral mirror of the zero
    // mode. Central: every physical level doubled by the second lattice
    // branch. Wilson: the r-term breaks chirality, leaving a single (slightly
    // shifted) zero mode and no doublers.
    CHECK(count(Scheme::staggered) == 6);
    CHECK(count(Scheme::central) == 10);
    CHECK(count(Scheme::wilson) == 5);
}

TEST_CASE("trapezoid quadrature on the calibration integrals") {
    {
        const Grid1D g{0.0, pi_v, 2001};
        VectorXcd v(g.n);
        for (int k = 0; k < g.n; ++k) v[k] = std::sin(g.x(k));
        CHECK(std::abs(quadrature(v, g) - 2.0) < 1e-6);
    }
    {
        const Grid1D g{-8.0, 8.0, 4001};
        VectorXd v(g.n);
        for (int k = 0; k < g.n; ++k) v[k] = std::exp(-g.x(k) * g.x(k));
        CHECK(std::abs(quadrature_real(v, g) - 1.7724538509055159) < 1e-10);
    }
    {
        const Grid1D g{-1.0, 3.0, 17};
        VectorXd v = VectorXd::Ones(g.n);
        CHECK(quadrature_real(v, g) == doctest::Approx(4.0).epsilon(1e-14));
    }
}

TEST_CASE("free plane wave is residual-free analytically and O(h^2) numerically") {
    const Potential2x2 V0(ScalarField(0.0), ScalarField(complexd{0.0, 0.0}),
                          ScalarField(0.0));
    const double k = 1.3;
    auto build = [&](const Grid1D& g, bool analytic) {
        SampledSpinor s;
        s.resize(g.n, analytic, false, false);
        for (int j = 0; j < g.n; ++j) {
            const complexd e = std::exp(complexd{0.0, k * g.x(j)});
            s.v[0][j] = e;
            s.v[1][j] = e;
            if (analytic) {
                s.dx[0][j] = complexd{0.0, k} * e;
                s.dx[1][j] = complexd{0.0, k} * e;
            }
        }
        return s;
    };
    const Grid1D fine{-5.0, 5.0, 1601};
    CHECK(residual_stationary(V0, build(fine, true), k, fine) < 1e-13);

    std::vector<double> hs, errs;
    for (int n : {101, 201, 401, 801}) {
        const Grid1D g{-5.0, 5.0, n};
        hs.push_back(g.h());
        errs.push_back(residual_stationary(V0, build(g, false), k, g));
    }
    const ConvergenceReport rep = convergence_order(hs, errs);
    CHECK_FALSE(rep.floor);
    CHECK(rep.order == doctest::Approx(2.0).epsilon(0.1));

    // Wrong energy leaves an O(1) residual.
    CHECK(residual_stationary(V0, build(fine, true), k + 0.5, fine) > 0.1);
}

TEST_CASE("spacetime residual sees the e^{-iEt} phase") {
    const GridTX g{0.0, 4.0, 41, -5.0, 5.0, 81};
    const double k = 0.9;
    SampledBispinor s;
    s.resize(g.size(), true, false, true);
    for (int j = 0; j < g.size(); ++j) {
        const Point p = g.point(j);
        const complexd e = std::exp(complexd{0.0, k * p.x - k * p.t});
        s.v[0][j] = e;
        s.v[1][j] = e;
        s.dx[0][j] = complexd{0.0, k} * e;
        s.dx[1][j] = complexd{0.0, k} * e;
        s.dt[0][j] = complexd{0.0, -k} * e;
        s.dt[1][j] = complexd{0.0, -k} * e;
    }
    const Potential4x4 zero;
    CHECK(residual_spacetime(zero, s, g) < 1e-13);
    CHECK_THROWS_AS(residual_spacetime(zero, s, g, KineticForm::pi_upper, 0.5),
                    ParameterError);
}

TEST_CASE("convergence reports floor out below the measurement noise") {
    const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    const std::vector<double> tiny{1e-15, 2e-15, 1.5e-15, 1e-15};
    const ConvergenceReport rep = convergence_order(h, tiny);
    CHECK(rep.floor);
    std::vector<double> quad;
    for (double hv : h) quad.push_back(0.7 * hv * hv);
    CHECK(convergence_order(h, quad).order == doctest::Approx(2.0).epsilon(1e-6));
}
