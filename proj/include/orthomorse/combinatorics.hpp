#pragma once

// Exact integer combinatorics behind the critical loci and Betti numbers:
// perfect fillings (contingency tables with fixed margins), their index and
// component dimension, subset degree statistics, and the mod-2 Betti numbers
// of SO(n), O(n) and the real Grassmannians.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "orthomorse/orthogonal.hpp"

namespace orthomorse {

using BigInt = boost::multiprecision::cpp_int;

/// Row margins m (length s) and column margins n (length t), all positive,
/// with equal sums.
struct Margins {
  std::vector<int> m;
  std::vector<int> n;

  Margins() = default;
  /// Throws std::invalid_argument on nonpositive entries or unequal sums.
  Margins(std::vector<int> rows, std::vector<int> cols);

  std::size_t s() const { return m.size(); }
  std::size_t t() const { return n.size(); }
  int total() const;
  friend bool operator==(const Margins&, const Margins&) = default;
};

/// s×t matrix of nonnegative integers whose row sums are m and column sums n.
class PerfectFilling {
 public:
  PerfectFilling() = default;
  /// eps is row-major s×t; throws std::invalid_argument unless it has the
  /// prescribed margins.
  PerfectFilling(Margins margins, std::vector<int> eps);

  const Margins& margins() const { return margins_; }
  std::size_t s() const { return margins_.s(); }
  std::size_t t() const { return margins_.t(); }
  /// 0-based cell access.
  int operator()(std::size_t i, std::size_t j) const { return eps_[i * t() + j]; }
  const std::vector<int>& entries() const { return eps_; }

  friend bool operator==(const PerfectFilling& a, const PerfectFilling& b) {
    return a.margins_ == b.margins_ && a.eps_ == b.eps_;
  }

 private:
  Margins margins_;
  std::vector<int> eps_;
};

/// All perfect fillings with the given margins, in ascending row-major
/// lexicographic order.
std::vector<PerfectFilling> enumerate_fillings(const Margins& margins);

/// Σ ε_ij·ε_kl over cell pairs with i<k and j<l. Meaningful as a Hessian index
/// only when both spectra are sorted increasingly.
long long filling_index(const PerfectFilling& f);

/// Σ C(m_i,2) + Σ C(n_j,2) − Σ C(ε_ij,2): the dimension of the critical
/// component (O(m̄)×O(n̄))/O(ε).
long long component_dimension(const PerfectFilling& f);

/// ε_ij = number of nonzero entries of S·P_σ in the m_i×n_j block.
PerfectFilling filling_of_spm(const SignedPermutation& sp, const Margins& margins);

/// |{(p,q) : p<q, σ(q) > σ(p)}|, the count of order-preserving pairs. Often
/// called the inversion number in this setting, although it counts
/// non-inversions in the usual convention. `perm` is 1-based.
long long inversion_stat(const std::vector<int>& perm);

struct SubsetDegrees {
  int n = 0;
  std::vector<int> subset;  // sorted, 1-based
  long long deg = 0;        // |{(p,q) ∈ ([n]∖S)×S : p<q}|
  long long sdeg = 0;       // C(|S|,2) + deg = |{(p,q) ∈ [n]×S : p<q}|
};

/// Throws std::invalid_argument for elements outside 1..n or repeats.
SubsetDegrees subset_degrees(std::vector<int> subset, int n);

/// Subset statistics are computed by enumerating all 2ⁿ subsets; n is
/// capped at this value.
inline constexpr int kMaxEnumerationN = 30;

/// c_i(k,n) = |{S ⊆ [n] : |S|=k, deg S = i}|; 0 outside the support.
BigInt grassmannian_betti(int i, int k, int n);
/// c_i(n) = |{S ⊆ [n] : sdeg S = i}|
BigInt group_betti_c(int i, int n);
/// b_i(n) = |{S ⊆ [n−1] : Σ_{s∈S} s = i}|
BigInt so_betti(int i, int n);

/// Polynomial with nonnegative big-integer coefficients, index = degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  static IntPolynomial monomial(int degree, BigInt c = 1);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coefficient(int i) const;
  /// −1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Multiply by tᵏ (k ≥ 0).
  IntPolynomial shifted(int k) const;
  IntPolynomial& operator+=(const IntPolynomial& o);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Coefficientwise a ≥ b.
  bool dominates(const IntPolynomial& b) const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// p_n(t) from p_1 = 1 and p_n = p_{n−1} + t^{n−1}·p_{n−1}.
IntPolynomial poincare_so(int n);

/// Σ_i c_i(k,n) tⁱ by subset enumeration.
IntPolynomial grassmannian_poincare(int k, int n);
/// Σ_i c_i(n) tⁱ by subset enumeration.
IntPolynomial group_poincare_c(int n);
/// Σ_i b_i(n) tⁱ by subset-sum enumeration (independent of poincare_so).
IntPolynomial so_poincare_enumerated(int n);

/// c_i(k,n) for all k (outer) and i (inner), one pass over the 2ⁿ subsets.
std::vector<std::vector<BigInt>> grassmannian_betti_table(int n);

enum class IotaConvention { KChoose2, ComplementChoose2 };

/// ι(k) = C(k,2) or C(n−k,2).
int iota(int k, int n, IotaConvention convention);

struct DegreeComparison {
  int degree = 0;
  BigInt lhs;
  BigInt rhs;
  bool equal = false;
};

struct FrankelReport {
  int n = 0;
  IotaConvention convention = IotaConvention::KChoose2;
  std::vector<DegreeComparison> rows;
  bool all_equal = false;
};

/// LHS 2·b_i(n) against RHS Σ_k c_{i−ι(k)}(k,n), every degree.
FrankelReport frankel_report(int n, IotaConvention convention);

long long binomial2(long long k);

/// All ordered sequences of positive integers summing to n, lexicographic.
std::vector<std::vector<int>> compositions(int n);

}  // namespace orthomorse
