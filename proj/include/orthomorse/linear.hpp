#pragma once

// Linear functions f(X) = Tr(AᵀX) on O(n). For A = I the critical points are
// the symmetric orthogonal matrices X = I − 2P_Λ, one Grassmannian G(k,n) of
// them for each dimension k of the (−1)-eigenspace Λ.

#include <vector>

#include "orthomorse/combinatorics.hpp"
#include "orthomorse/matrix.hpp"
#include "orthomorse/orthogonal.hpp"
#include "orthomorse/quadratic.hpp"

namespace orthomorse {

class LinearProblem {
 public:
  LinearProblem() = default;
  /// Throws std::invalid_argument unless `a` is square.
  explicit LinearProblem(Matrix a);

  const Matrix& a() const { return a_; }
  std::size_t n() const { return a_.rows(); }

 private:
  Matrix a_;
};

/// A k-dimensional subspace of Rⁿ given by an orthonormal n×k basis.
class GrassmannPoint {
 public:
  GrassmannPoint() = default;
  /// Throws numerical_error unless max|BᵀB − I| ≤ 1e−10.
  static GrassmannPoint certify(Matrix basis);

  std::size_t n() const { return basis_.rows(); }
  std::size_t k() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  /// B Bᵀ, independent of the choice of basis.
  Matrix projector() const;

 private:
  explicit GrassmannPoint(Matrix b) : basis_(std::move(b)) {}
  Matrix basis_;
};

double linear_value(const LinearProblem& prob, const OrthogonalPoint& x);
/// ½(A − XAᵀX)
Matrix linear_gradient(const LinearProblem& prob, const OrthogonalPoint& x);
/// max |XAᵀ − AXᵀ| ≤ tol
bool is_critical_linear(const LinearProblem& prob, const OrthogonalPoint& x, double tol);

/// The (−1)-eigenspace of a symmetric orthogonal X. Throws numerical_error if
/// max|X − Xᵀ| > tol or some eigenvalue is not within 1e−6 of ±1.
GrassmannPoint grassmannian_of_critical(const OrthogonalPoint& x, double tol);
/// I − 2P_Λ
OrthogonalPoint critical_of_subspace(const GrassmannPoint& subspace);

/// Tr(AᵀXEN)
double hessian_bilinear_linear(const LinearProblem& prob, const OrthogonalPoint& x, const Matrix& e,
                               const Matrix& nn);
QuadraticForm hessian_form_linear(const LinearProblem& prob, const OrthogonalPoint& x);

struct MorseInequalityReport {
  int n = 0;
  /// lhs = b_i(n), rhs = Σ_k c_{i−C(n−2k,2)}(2k,n).
  std::vector<DegreeComparison> rows;
  bool all_equal = false;
};

MorseInequalityReport morse_inequality_report(int n);

}  // namespace orthomorse
