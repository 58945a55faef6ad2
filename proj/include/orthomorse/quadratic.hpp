#pragma once

// The quadratic trace function f(X) = Tr(A X B Xᵀ) on O(n) for diagonal
// A = Diag(a_1 I_{m_1}, …, a_s I_{m_s}) and B = Diag(b_1 I_{n_1}, …, b_t I_{n_t}).
// Critical components are indexed by perfect fillings ε of the margins (m, n);
// the component of ε is the image of O(m̄)×O(n̄) under X[i,j] = Q[i,j]R[i,j]ᵀ.

#include <array>
#include <vector>

#include "orthomorse/combinatorics.hpp"
#include "orthomorse/matrix.hpp"
#include "orthomorse/orthogonal.hpp"

namespace orthomorse {

/// Distinct eigenvalues in strictly increasing order with positive
/// multiplicities.
struct Spectrum {
  std::vector<double> values;
  std::vector<int> mults;

  Spectrum() = default;
  /// Throws std::invalid_argument unless values are finite and strictly
  /// increasing, mults positive, and the lengths agree.
  Spectrum(std::vector<double> values, std::vector<int> mults);

  int total() const;
  /// The n diagonal entries, each value repeated by its multiplicity.
  std::vector<double> diagonal() const;
  /// min_{j} (values[j+1] − values[j]); 0 for a single value.
  double min_gap() const;
  double max_abs() const;
};

class QuadraticProblem {
 public:
  QuadraticProblem() = default;
  /// Throws std::invalid_argument unless both spectra have the same total.
  QuadraticProblem(Spectrum a, Spectrum b);

  const Spectrum& spec_a() const { return a_; }
  const Spectrum& spec_b() const { return b_; }
  const Matrix& a() const { return a_mat_; }
  const Matrix& b() const { return b_mat_; }
  std::size_t n() const { return a_mat_.rows(); }
  /// Row margins from A's multiplicities, column margins from B's.
  Margins margins() const { return Margins(a_.mults, b_.mults); }
  /// max|a|·max|b|, the natural size of f's second derivatives.
  double magnitude() const { return a_.max_abs() * b_.max_abs(); }

 private:
  Spectrum a_, b_;
  Matrix a_mat_, b_mat_;
};

/// Q[i] is m_i×m_i with column blocks of widths ε_i1..ε_it; R[j] is n_j×n_j
/// with column blocks of widths ε_1j..ε_sj.
struct CriticalDecomposition {
  PerfectFilling filling;
  std::vector<Matrix> q;
  std::vector<Matrix> r;
};

/// Symmetric C(n,2)×C(n,2) matrix of a bilinear form on so(n) in the
/// standard basis ordered as skew_indices(n).
struct QuadraticForm {
  std::size_t n = 0;
  Matrix h;
  /// max |H − Hᵀ| of the form before symmetrization.
  double asymmetry_defect = 0.0;
  /// Size of the data the form was built from; floors the zero tolerance.
  double scale = 0.0;
};

double f_value(const QuadraticProblem& prob, const OrthogonalPoint& x);
/// (AXBXᵀ − XBXᵀA)X
Matrix f_gradient(const QuadraticProblem& prob, const OrthogonalPoint& x);
/// max |AXBXᵀ − (AXBXᵀ)ᵀ| ≤ tol
bool is_critical_quadratic(const QuadraticProblem& prob, const OrthogonalPoint& x, double tol);

/// X[i,j] = Q[i,j]R[i,j]ᵀ. Throws std::invalid_argument on block-size
/// mismatch and numerical_error if a Q[i] or R[j] is not orthogonal.
OrthogonalPoint construct_critical(const QuadraticProblem& prob, const CriticalDecomposition& dec);

/// Derivative of construct_critical along Q[i] ↦ Q[i]·exp(τ·q_skew[i]),
/// R[j] ↦ R[j]·exp(τ·r_skew[j]) at τ = 0: blocks M[i,j]R[i,j]ᵀ + Q[i,j]N[i,j]ᵀ
/// with M[i] = Q[i]·q_skew[i] and N[j] = R[j]·r_skew[j]. The result is tangent
/// to the critical component at construct_critical(prob, dec).
Matrix critical_direction(const QuadraticProblem& prob, const CriticalDecomposition& dec,
                          const std::vector<Matrix>& q_skew, const std::vector<Matrix>& r_skew);

/// Inverse of construct_critical up to O(ε). Eigenvalues of each diagonal
/// block H_i of XBXᵀ are assigned to the b_j within a quarter of B's smallest
/// gap. Throws numerical_error if X is not critical within `tol` or an
/// eigenvalue is unassignable.
CriticalDecomposition decompose_critical(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                         double tol);

/// Tr(A X [E,[N,B]] Xᵀ) for arbitrary skew E, N.
double hessian_bilinear_quadratic(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                  const Matrix& e, const Matrix& nn);
/// Tr(A X E [N,B] Xᵀ + A X [N,B] Eᵀ Xᵀ), the same form written before the
/// skew-symmetry of E is used.
double hessian_bilinear_quadratic_expanded(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                           const Matrix& e, const Matrix& nn);

QuadraticForm hessian_form_quadratic(const QuadraticProblem& prob, const OrthogonalPoint& x);
/// The same form assembled from hessian_bilinear_quadratic_expanded.
QuadraticForm hessian_form_quadratic_expanded(const QuadraticProblem& prob,
                                              const OrthogonalPoint& x);

struct IndexNullity {
  long long index = 0;
  long long nullity = 0;
  friend bool operator==(const IndexNullity&, const IndexNullity&) = default;
};

/// index = #{λ < −zero_tol}, nullity = #{|λ| ≤ zero_tol}.
IndexNullity index_nullity(const QuadraticForm& form, double zero_tol);
/// 1e−7 · max(spectral radius, form.scale).
double default_zero_tol(const QuadraticForm& form);
IndexNullity index_nullity(const QuadraticForm& form);

/// 2(B_pp − B_qq)(A_σ(q)σ(q) − A_σ(p)σ(p)) ordered as skew_indices(n).
std::vector<double> spm_hessian_diagonal(const QuadraticProblem& prob, const SignedPermutation& sp);

/// The seven tangent-space conditions that characterize T_X F at a critical
/// X, in order: AS symmetric, S block diagonal, AS = SA, BU = UB, BU
/// symmetric, U block diagonal, XᵀM in the Hessian kernel; here
/// S = MBXᵀ + XBMᵀ and U = XᵀAM + MᵀAX. Residuals are compared against
/// tol · max|A| · max|B| · max|M|. Throws std::invalid_argument if M is not
/// tangent at X.
std::array<bool, 7> tangent_criteria_bott(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                          const Matrix& m, double tol);

/// Offsets of consecutive blocks of the given sizes.
std::vector<std::size_t> block_offsets(const std::vector<int>& sizes);

}  // namespace orthomorse
