#pragma once

// Geometry of O(n): certified orthogonal points, the standard basis E(p,q) of
// so(n) and its symmetric companions F(p,q), D(p), signed permutation
// matrices, tangent spaces, Haar sampling and polar projection.
//
// The tangent space at X is { M : MXᵀ + XMᵀ = 0 } = X·so(n); the metric is
// ⟨M,N⟩ = Tr(MᵀN), which counts each off-diagonal pair twice. Flow time is
// parametrized by this normalization.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "orthomorse/matrix.hpp"

namespace orthomorse {

inline constexpr double kDefaultOrthoTol = 1e-9;

/// max |XᵀX − I|
double ortho_residual(const Matrix& x);

/// An n×n matrix known to lie on O(n) within a tolerance.
class OrthogonalPoint {
 public:
  OrthogonalPoint() = default;

  /// Throws numerical_error if the residual exceeds `tol`, and
  /// std::invalid_argument if `m` is not square.
  static OrthogonalPoint certify(Matrix m, double tol = kDefaultOrthoTol);

  const Matrix& mat() const { return mat_; }
  double residual() const { return residual_; }
  std::size_t n() const { return mat_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

 private:
  OrthogonalPoint(Matrix m, double r) : mat_(std::move(m)), residual_(r) {}
  Matrix mat_;
  double residual_ = 0.0;
};

/// Standard-basis index of so(n): 1 ≤ p < q (1-based).
struct SkewIndex {
  int p = 1;
  int q = 2;
  SkewIndex() = default;
  SkewIndex(int p_, int q_);
  friend bool operator==(const SkewIndex&, const SkewIndex&) = default;
};

/// C(n,2)
std::size_t skew_dim(std::size_t n);
/// All (p,q), 1 ≤ p < q ≤ n, in lexicographic order. This order indexes the
/// rows/columns of every QuadraticForm.
std::vector<SkewIndex> skew_indices(std::size_t n);

/// E(p,q): −1 at (p,q), +1 at (q,p).
Matrix skew_basis(SkewIndex idx, std::size_t n);
/// F(p,q) = F(q,p): +1 at (p,q) and (q,p). Requires p ≠ q.
Matrix sym_basis(int p, int q, std::size_t n);
/// D(p): +1 at (p,p).
Matrix diag_unit(int p, std::size_t n);

/// Coordinates c of a skew matrix in the standard basis (E = Σ c_pq E(p,q)),
/// ordered as skew_indices(n). Only the strictly lower triangle is read.
std::vector<double> skew_coordinates(const Matrix& e);
Matrix from_skew_coordinates(std::span<const double> c, std::size_t n);

/// S·P_σ with S = Diag(signs) and column i of P_σ equal to e_{σ(i)}.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  /// perm is 1-based; throws std::invalid_argument unless it is a bijection of
  /// {1..n} and every sign is ±1.
  SignedPermutation(std::vector<int> signs, std::vector<int> perm);
  static SignedPermutation identity(std::size_t n);

  std::size_t n() const { return perm_.size(); }
  const std::vector<int>& signs() const { return signs_; }
  const std::vector<int>& perm() const { return perm_; }
  int sigma(int i) const { return perm_[static_cast<std::size_t>(i - 1)]; }

 private:
  std::vector<int> signs_;
  std::vector<int> perm_;
};

Matrix permutation_matrix(const std::vector<int>& perm);
OrthogonalPoint spm_matrix(const SignedPermutation& sp);

/// Every signed permutation of size n (2ⁿ·n! of them), permutations in
/// lexicographic order, sign patterns inner.
std::vector<SignedPermutation> all_signed_permutations(std::size_t n);

/// The signed permutation matrix within `tol` (max-abs) of X, if any.
std::optional<SignedPermutation> nearest_signed_permutation(const Matrix& x, double tol);

/// [U,V] = UV − VU
Matrix commutator(const Matrix& u, const Matrix& v);

/// max |MXᵀ + XMᵀ| ≤ tol
bool is_tangent(const OrthogonalPoint& x, const Matrix& m, double tol);

/// Haar-distributed element of O(n) (or SO(n) when `special`), from the QR
/// factorization of a standard Gaussian matrix with R's diagonal made
/// positive. Deterministic in the generator state.
OrthogonalPoint haar_orthogonal(std::size_t n, std::mt19937_64& rng, bool special);
OrthogonalPoint random_orthogonal(std::size_t n, std::uint64_t seed, bool special);

/// Polar factor X(XᵀX)^{-1/2}: nearest orthogonal matrix in Frobenius norm.
/// Throws numerical_error for singular input.
OrthogonalPoint project_orthogonal(const Matrix& x);

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
/// Intended for skew-symmetric arguments, where it lands on SO(n) to roundoff.
Matrix expm(const Matrix& k);

/// Random skew matrix with independent standard normal coordinates.
Matrix random_skew(std::size_t n, std::mt19937_64& rng);

}  // namespace orthomorse
