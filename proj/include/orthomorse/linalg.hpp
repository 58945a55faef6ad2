#pragma once

#include <vector>

#include "orthomorse/matrix.hpp"

namespace orthomorse {

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

/// Eigendecomposition of the symmetric part of `a`.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// Eigenvalues only, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

/// Orthonormal basis of the column span of a full-column-rank matrix, obtained
/// from a Householder QR with the diagonal of R made nonnegative (so the
/// result equals Gram–Schmidt on the columns).
Matrix orthonormalize_columns(const Matrix& a);

double determinant(const Matrix& a);

}  // namespace orthomorse
