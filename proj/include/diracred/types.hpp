#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace diracred {

using complexd = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::Vector2cd;
using Eigen::Vector4cd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi_v = 3.141592653589793238462643383279502884;

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid construction parameters (angles out of range, negative widths, ...).
struct ParameterError : Error {
    using Error::Error;
};

// A requested bound state does not exist; carries the inequality that failed.
struct NotAdmissible : Error {
    std::string inequality;
    explicit NotAdmissible(const std::string& ineq)
        : Error("not admissible: " + ineq), inequality(ineq) {}
};

// The n = 0 label is a zero-energy constant, not a normalizable excited state.
struct ZeroEnergyMode : Error {
    ZeroEnergyMode() : Error("n = 0 labels the zero-energy mode; no bound excitation") {}
};

// A potential was handed to an identification routine it cannot match.
struct SchemeMismatch : Error {
    using Error::Error;
};

// Angle extraction has no unique solution (both mixing witnesses vanish).
struct UnderdeterminedAngle : Error {
    using Error::Error;
};

// The sampled 4x4 potential is not of the reducible shape within tolerance.
struct NotReducible : Error {
    double worst_violation;
    NotReducible(const std::string& what, double worst)
        : Error(what), worst_violation(worst) {}
};

// Backend failure in the linear algebra layer (LAPACK info != 0 and such).
struct NumericsError : Error {
    using Error::Error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

// Angles and relative sign of the block rotation. tau in (0, pi/2),
// phi in [0, 2*pi), epsilon = +1 or -1.
struct ReductionParams {
    double tau = pi_v / 4.0;
    double phi = 0.0;
    int epsilon = 1;

    void validate() const;
};

// Scalar entry of a potential: a complex function of (x, y, t).
// `hermitian_entry` marks diagonal entries that must stay real.
class ScalarField {
public:
    using Fn = std::function<complexd(const Point&)>;

    ScalarField() : ScalarField(complexd{0.0, 0.0}) {}
    explicit ScalarField(complexd c, bool hermitian_entry = false)
        : fn_([c](const Point&) { return c; }), hermitian_(hermitian_entry || c.imag() == 0.0) {}
    ScalarField(Fn fn, bool hermitian_entry)
        : fn_(std::move(fn)), hermitian_(hermitian_entry) {}

    complexd operator()(const Point& p) const { return fn_(p); }
    bool hermitian_entry() const { return hermitian_; }

private:
    Fn fn_;
    bool hermitian_;
};

// 2x2 Hermitian potential [[a, b], [conj(b), d]]; a and d must be real-valued.
struct Potential2x2 {
    ScalarField a;
    ScalarField b;
    ScalarField d;

    Potential2x2() = default;
    Potential2x2(ScalarField a_, ScalarField b_, ScalarField d_);

    Matrix2cd operator()(const Point& p) const;
};

// 4x4 potential as a matrix-valued evaluator.
class Potential4x4 {
public:
    using MatFn = std::function<Matrix4cd(const Point&)>;

    Potential4x4() : fn_([](const Point&) { return Matrix4cd::Zero().eval(); }) {}
    explicit Potential4x4(MatFn fn) : fn_(std::move(fn)) {}

    Matrix4cd operator()(const Point& p) const { return fn_(p); }

private:
    MatFn fn_;
};

// Two 2x2 channel potentials plus the rotation that couples them.
struct ReducedPair {
    Potential2x2 first;
    Potential2x2 second;
    ReductionParams params;
};

}  // namespace diracred
