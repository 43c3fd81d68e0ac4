#include "diracred/jacobi.hpp"

#include "diracred/types.hpp"

namespace diracred {

double jacobi_polynomial(int n, double alpha, double beta, double z) {
    if (n < 0) throw ParameterError("jacobi_polynomial needs n >= 0");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = (alpha + 1.0) + (alpha + beta + 2.0) * (z - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const double ab = alpha + beta;
        const double c1 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
        const double c2 = (2.0 * k + ab - 1.0) * (2.0 * k + ab) * (2.0 * k + ab - 2.0);
        const double c3 = (2.0 * k + ab - 1.0) * (alpha * alpha - beta * beta);
        const double c4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab);
        const double next = ((c2 * z + c3) * p - c4 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    return p;
}

double jacobi_derivative(int n, double alpha, double beta, double z) {
    if (n < 0) throw ParameterError("jacobi_derivative needs n >= 0");
    if (n == 0) return 0.0;
    return 0.5 * (n + alpha + beta + 1.0) *
           jacobi_polynomial(n - 1, alpha + 1.0, beta + 1.0, z);
}

double jacobi_second_derivative(int n, double alpha, double beta, double z) {
    if (n < 0) throw ParameterError("jacobi_second_derivative needs n >= 0");
    if (n <= 1) return 0.0;
    return 0.25 * (n + alpha + beta + 1.0) * (n + alpha + beta + 2.0) *
           jacobi_polynomial(n - 2, alpha + 2.0, beta + 2.0, z);
}

}  // namespace diracred
