#pragma once

namespace diracred {

// Jacobi polynomial P_n^(alpha, beta)(z) by the forward three-term recurrence,
// stable for the small n this library needs. General real alpha, beta;
// degenerate parameter combinations where the recurrence denominator vanishes
// follow IEEE semantics (inf/nan), as usual for the raw recurrence.
double jacobi_polynomial(int n, double alpha, double beta, double z);

// d/dz P_n^(alpha, beta)(z) = ((n + alpha + beta + 1) / 2) P_{n-1}^(alpha+1, beta+1)(z).
double jacobi_derivative(int n, double alpha, double beta, double z);

// Second z-derivative via the same identity applied twice.
double jacobi_second_derivative(int n, double alpha, double beta, double z);

}  // namespace diracred
