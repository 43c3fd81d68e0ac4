#include "diracred/eigensolve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <sstream>
#include <vector>

namespace diracred {

namespace {

double participation_ratio(const VectorXcd& v) {
    double norm2 = 0.0;
    double quartic = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double p = std::norm(v[i]);
        norm2 += p;
        quartic += p * p;
    }
    if (quartic <= 0.0) return 0.0;
    return (norm2 * norm2) / quartic;
}

[[noreturn]] void solver_failed(const char* routine, lapack_int info) {
    std::ostringstream msg;
    msg << routine << " failed with info = " << info;
    if (info > 0) msg << " (" << info << " eigenvectors did not converge)";
    throw NumericsError(msg.str());
}

}  // namespace

GapSpectrum eigen_in_gap(const DiscreteOperator& op, double e_lo, double e_hi,
                         double pr_factor, bool force_dense) {
    if (!(e_lo < e_hi)) throw ParameterError("eigen_in_gap needs e_lo < e_hi");
    const lapack_int n = static_cast<lapack_int>(op.dim());
    const double abstol = 2.0 * LAPACKE_dlamch('S');

    lapack_int found = 0;
    std::vector<double> w(static_cast<std::size_t>(n));
    MatrixXcd z(n, n);

    if (force_dense || n <= 1024) {
        MatrixXcd a = op.dense();
        std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
        lapack_int info = LAPACKE_zheevr(
            LAPACK_COL_MAJOR, 'V', 'V', 'U', n, a.data(), n, e_lo, e_hi, 0, 0,
            abstol, &found, w.data(), z.data(), n, isuppz.data());
        if (info != 0) solver_failed("zheevr", info);
    } else {
        const lapack_int kd = static_cast<lapack_int>(op.kd);
        MatrixXcd ab = op.band;  // the solver overwrites the band storage
        MatrixXcd q(n, n);       // unitary factor of the tridiagonal reduction
        std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
        lapack_int info = LAPACKE_zhbevx(
            LAPACK_COL_MAJOR, 'V', 'V', 'U', n, kd, ab.data(), kd + 1, q.data(),
            n, e_lo, e_hi, 0, 0, abstol, &found, w.data(), z.data(), n,
            ifail.data());
        if (info != 0) solver_failed("zhbevx", info);
    }

    GapSpectrum out;
    const double pr_cutoff = pr_factor * static_cast<double>(op.grid.n);
    for (lapack_int k = 0; k < found; ++k) {
        EigenPair pair;
        pair.energy = w[static_cast<std::size_t>(k)];
        pair.vector = z.col(k);
        pair.vector.normalize();
        pair.participation_ratio = participation_ratio(pair.vector);
        if (pair.participation_ratio < pr_cutoff) {
            out.states.push_back(std::move(pair));
        } else {
            ++out.filtered_count;
        }
    }
    std::sort(out.states.begin(), out.states.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.energy < b.energy; });
    return out;
}

}  // namespace diracred
