#include "diracred/transforms.hpp"

#include <cmath>

namespace diracred {

void ReductionParams::validate() const {
    // Angles are plain radians, any value; only the block sign is constrained.
    if (epsilon != 1 && epsilon != -1)
        throw ParameterError("epsilon must be +1 or -1");
    if (!std::isfinite(tau) || !std::isfinite(phi))
        throw ParameterError("angles must be finite");
}

Matrix2cd mixer_matrix(const ReductionParams& p) {
    p.validate();
    const double c = std::cos(p.tau);
    const double s = std::sin(p.tau);
    const complexd ep = std::exp(complexd{0.0, p.phi});
    Matrix2cd u;
    u << c, -std::conj(ep) * s,
         ep * s, c;
    return u;
}

Matrix4cd swap_matrix(int epsilon) {
    if (epsilon != 1 && epsilon != -1)
        throw ParameterError("epsilon must be +1 or -1");
    Matrix4cd r = Matrix4cd::Zero();
    r(0, 0) = 1.0;
    r(1, 1) = 1.0;
    r(2, 3) = static_cast<double>(epsilon);
    r(3, 2) = 1.0;
    return r;
}

Matrix4cd total_transform(const ReductionParams& p) {
    const Matrix2cd u = mixer_matrix(p);
    Matrix4cd ukron = Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ukron(2 * i, 2 * j) = u(i, j);
            ukron(2 * i + 1, 2 * j + 1) = u(i, j);
        }
    return swap_matrix(p.epsilon) * ukron;
}

Potential2x2::Potential2x2(ScalarField a_, ScalarField b_, ScalarField d_)
    : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
    if (!a.hermitian_entry() || !d.hermitian_entry())
        throw ParameterError("diagonal entries of a 2x2 potential must be real-valued");
}

Matrix2cd Potential2x2::operator()(const Point& p) const {
    Matrix2cd m;
    const complexd bv = b(p);
    m << a(p), bv,
         std::conj(bv), d(p);
    return m;
}

}  // namespace diracred
