#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qc {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Singular values at or below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-9;

std::size_t numerical_rank(const CMatrix& m);

/// Orthonormal basis (as columns) of the column space of m.
CMatrix column_space_basis(const CMatrix& m);

/// Orthonormal basis (as columns) of the kernel of m.
CMatrix kernel_basis(const CMatrix& m);

/// Smallest and largest singular values; {0, 0} for empty matrices.
std::pair<double, double> singular_value_range(const CMatrix& m);

/// Largest absolute entry, 0 for empty matrices.
double max_abs(const CMatrix& m);

}  // namespace qc
