#pragma once

#include "diracred/types.hpp"

namespace diracred {

// Block rotation [[cos(tau), -e^{-i phi} sin(tau)], [e^{i phi} sin(tau), cos(tau)]].
Matrix2cd mixer_matrix(const ReductionParams& p);

// Component reshuffle acting on bispinors: rows 3 and 4 are exchanged and the
// third picks up the sign epsilon.
Matrix4cd swap_matrix(int epsilon);

// Full change of frame: swap_matrix(epsilon) * kron(mixer_matrix, I2).
Matrix4cd total_transform(const ReductionParams& p);

}  // namespace diracred
