#pragma once

#include <span>
#include <utility>

#include "diracred/sampled.hpp"
#include "diracred/transforms.hpp"
#include "diracred/types.hpp"

namespace diracred {

// Value kernel of the assembled 4x4 potential: the entrywise trigonometric
// mixture of the two channel blocks. Equals
// total_transform * blockdiag(V1, V2) * total_transform^dag for all inputs;
// the conjugation product is kept as an independent cross-check in the tests.
Matrix4cd assemble_matrix(complexd a1, complexd b1, complexd d1,
                          complexd a2, complexd b2, complexd d2,
                          const ReductionParams& params);

// Assembled 4x4 potential field of a reduced pair.
Potential4x4 assemble(const ReducedPair& pair);

// Entry (i, j) of a 4x4 potential as a standalone scalar field (0-based).
ScalarField potential_entry(const Potential4x4& V, int i, int j);

// max over points of the Hermiticity defect ||M - M^dag||_inf.
double hermiticity_defect(const Potential4x4& V, std::span<const Point> points);

// The six freely choosable entries of the constrained 4x4 shape. V14 and V23
// are real everywhere; the remaining four matrix entries are determined.
struct FixedFormComponents {
    ScalarField V11, V12, V13, V14, V22, V23;

    FixedFormComponents(ScalarField v11, ScalarField v12, ScalarField v13,
                        ScalarField v14, ScalarField v22, ScalarField v23);
};

// Builds the full 4x4 field from the free components:
//   (1,3) = e^{-i phi} V13, (1,4) = e^{-i phi} V14, (2,3) = e^{-i phi} V23,
//   (2,4) = eps e^{-i phi} conj(V13), V33 = V22 - 2 eps V23 cot(2 tau),
//   (3,4) = eps conj(V12) - 2 conj(V13) cot(2 tau), V44 = V11 - 2 V14 cot(2 tau).
Potential4x4 fixed_form_potential(const FixedFormComponents& c, const ReductionParams& params);

// Splits the fixed form into its two decoupled channels:
// base +/- {eps tan(tau), -eps cot(tau)} * correction, with
// base = [[V11, V12], [V12^dag, V22]] and correction = [[eps V14, V13], [V13^dag, V23]].
// Throws ParameterError when tan(tau) or cot(tau) is not finite.
ReducedPair reduced_pair_from_fixed_form(const FixedFormComponents& c,
                                         const ReductionParams& params);

// Embeds two-channel solutions into 4-component form:
//   psi -> (c psi1, c psi2, eps e^{i phi} s psi2, e^{i phi} s psi1)
//   xi  -> (-s xi1, -s xi2, eps e^{i phi} c xi2, e^{i phi} c xi1)
// with c = cos(tau), s = sin(tau). Derivative arrays carry over componentwise.
// A null input yields an empty output in that slot.
std::pair<SampledBispinor, SampledBispinor> lift(const SampledSpinor* psi,
                                                 const SampledSpinor* xi,
                                                 const ReductionParams& params);
SampledBispinor lift_first(const SampledSpinor& psi, const ReductionParams& params);
SampledBispinor lift_second(const SampledSpinor& xi, const ReductionParams& params);

// Off-diagonal-block perturbation: upper-right 2x2 block [[v1, v2], [v3, v4]],
// lower-left its adjoint, diagonal blocks zero.
struct PerturbationBlock {
    ScalarField v1, v2, v3, v4;
};

Matrix4cd perturbation_block_matrix(const PerturbationBlock& b, const Point& p);

// Conjugates the perturbation into the assembled frame: T * dV * T^dag.
Potential4x4 perturbation_lift(const PerturbationBlock& b, const ReductionParams& params);

// Quadrature approximation of <Psi, M Psi> over the grid.
template <class Grid>
complexd expectation(const SampledBispinor& Psi, const Potential4x4& M, const Grid& g) {
    if (Psi.size() != g.size()) throw ParameterError("state/grid size mismatch");
    complexd acc{0.0, 0.0};
    for (int k = 0; k < g.size(); ++k) {
        const Matrix4cd m = M(g.point(k));
        Vector4cd v;
        for (int c = 0; c < 4; ++c) v[c] = Psi.v[c][k];
        acc += g.weight(k) * (v.adjoint() * m * v)(0, 0);
    }
    return acc;
}

}  // namespace diracred
