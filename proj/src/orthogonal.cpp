#include "orthomorse/orthogonal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "orthomorse/errors.hpp"
#include "orthomorse/linalg.hpp"

namespace orthomorse {

double ortho_residual(const Matrix& x) {
  require_square(x, "ortho_residual");
  return max_abs_diff(x.transpose() * x, Matrix::identity(x.rows()));
}

OrthogonalPoint OrthogonalPoint::certify(Matrix m, double tol) {
  require_square(m, "OrthogonalPoint");
  const double r = ortho_residual(m);
  if (!(r <= tol))
    throw numerical_error("matrix is not orthogonal: residual " + format_magnitude(r) +
                          " exceeds " + format_magnitude(tol));
  return OrthogonalPoint(std::move(m), r);
}

SkewIndex::SkewIndex(int p_, int q_) : p(p_), q(q_) {
  if (!(1 <= p && p < q)) throw std::invalid_argument("skew index requires 1 <= p < q");
}

std::size_t skew_dim(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

std::vector<SkewIndex> skew_indices(std::size_t n) {
  std::vector<SkewIndex> out;
  out.reserve(skew_dim(n));
  for (int p = 1; p <= static_cast<int>(n); ++p)
    for (int q = p + 1; q <= static_cast<int>(n); ++q) out.emplace_back(p, q);
  return out;
}

namespace {
void require_index(int p, std::size_t n, const char* what) {
  if (p < 1 || p > static_cast<int>(n))
    throw std::invalid_argument(std::string(what) + ": index " + std::to_string(p) +
                                " out of range 1.." + std::to_string(n));
}
}  // namespace

Matrix skew_basis(SkewIndex idx, std::size_t n) {
  require_index(idx.p, n, "skew_basis");
  require_index(idx.q, n, "skew_basis");
  if (idx.p >= idx.q) throw std::invalid_argument("skew_basis requires p < q");
  Matrix e(n, n);
  e(idx.p - 1, idx.q - 1) = -1.0;
  e(idx.q - 1, idx.p - 1) = 1.0;
  return e;
}

Matrix sym_basis(int p, int q, std::size_t n) {
  require_index(p, n, "sym_basis");
  require_index(q, n, "sym_basis");
  if (p == q) throw std::invalid_argument("sym_basis requires p != q");
  Matrix f(n, n);
  f(p - 1, q - 1) = 1.0;
  f(q - 1, p - 1) = 1.0;
  return f;
}

Matrix diag_unit(int p, std::size_t n) {
  require_index(p, n, "diag_unit");
  Matrix d(n, n);
  d(p - 1, p - 1) = 1.0;
  return d;
}

std::vector<double> skew_coordinates(const Matrix& e) {
  require_square(e, "skew_coordinates");
  std::vector<double> c;
  c.reserve(skew_dim(e.rows()));
  for (auto idx : skew_indices(e.rows())) c.push_back(e(idx.q - 1, idx.p - 1));
  return c;
}

Matrix from_skew_coordinates(std::span<const double> c, std::size_t n) {
  if (c.size() != skew_dim(n)) throw std::invalid_argument("from_skew_coordinates: wrong length");
  Matrix e(n, n);
  std::size_t k = 0;
  for (auto idx : skew_indices(n)) {
    e(idx.q - 1, idx.p - 1) = c[k];
    e(idx.p - 1, idx.q - 1) = -c[k];
    ++k;
  }
  return e;
}

SignedPermutation::SignedPermutation(std::vector<int> signs, std::vector<int> perm)
    : signs_(std::move(signs)), perm_(std::move(perm)) {
  const std::size_t n = perm_.size();
  if (signs_.size() != n) throw std::invalid_argument("signed permutation: length mismatch");
  std::vector<bool> seen(n, false);
  for (int v : perm_) {
    if (v < 1 || v > static_cast<int>(n) || seen[v - 1])
      throw std::invalid_argument("signed permutation: perm is not a bijection of 1..n");
    seen[v - 1] = true;
  }
  for (int s : signs_)
    if (s != 1 && s != -1) throw std::invalid_argument("signed permutation: signs must be +1/-1");
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  return SignedPermutation(std::vector<int>(n, 1), std::move(perm));
}

Matrix permutation_matrix(const std::vector<int>& perm) {
  const std::size_t n = perm.size();
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(perm[i] - 1, i) = 1.0;
  return p;
}

OrthogonalPoint spm_matrix(const SignedPermutation& sp) {
  Matrix x(sp.n(), sp.n());
  for (std::size_t i = 0; i < sp.n(); ++i) {
    const int row = sp.perm()[i] - 1;
    x(row, i) = sp.signs()[row];
  }
  return OrthogonalPoint::certify(std::move(x), 0.0);
}

std::vector<SignedPermutation> all_signed_permutations(std::size_t n) {
  std::vector<SignedPermutation> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> signs(n);
      for (std::size_t i = 0; i < n; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
      out.emplace_back(std::move(signs), perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::optional<SignedPermutation> nearest_signed_permutation(const Matrix& x, double tol) {
  require_square(x, "nearest_signed_permutation");
  const std::size_t n = x.rows();
  std::vector<int> perm(n), signs(n, 1);
  std::vector<bool> used(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::abs(x(r, c)) > std::abs(x(best, c))) best = r;
    if (used[best]) return std::nullopt;
    used[best] = true;
    perm[c] = static_cast<int>(best) + 1;
    signs[best] = x(best, c) < 0 ? -1 : 1;
  }
  SignedPermutation sp(std::move(signs), std::move(perm));
  if (max_abs_diff(spm_matrix(sp).mat(), x) > tol) return std::nullopt;
  return sp;
}

Matrix commutator(const Matrix& u, const Matrix& v) {
  require_square(u, "commutator");
  require_same_shape(u, v, "commutator");
  return u * v - v * u;
}

bool is_tangent(const OrthogonalPoint& x, const Matrix& m, double tol) {
  require_same_shape(x.mat(), m, "is_tangent");
  const Matrix mxt = m * x.mat().transpose();
  return max_abs(mxt + mxt.transpose()) <= tol;
}

OrthogonalPoint haar_orthogonal(std::size_t n, std::mt19937_64& rng, bool special) {
  if (n == 0) return OrthogonalPoint::certify(Matrix(0, 0), 0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (std::size_t j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  Matrix x(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = q(i, j);
  if (special && determinant(x) < 0)
    for (std::size_t i = 0; i < n; ++i) x(i, 0) = -x(i, 0);
  return OrthogonalPoint::certify(std::move(x), 1e-12);
}

OrthogonalPoint random_orthogonal(std::size_t n, std::uint64_t seed, bool special) {
  std::mt19937_64 rng(seed);
  return haar_orthogonal(n, rng, special);
}

OrthogonalPoint project_orthogonal(const Matrix& x) {
  require_square(x, "project_orthogonal");
  if (x.empty()) return OrthogonalPoint::certify(Matrix(0, 0), 0.0);
  const SymmetricEigen eig = symmetric_eigen(x.transpose() * x);
  const double top = eig.values.back();
  const double bottom = eig.values.front();
  if (!(top > 0.0) || bottom <= 1e-24 * top)
    throw numerical_error("project_orthogonal: matrix is singular");
  const std::size_t n = x.rows();
  // (XᵀX)^{-1/2} = V Λ^{-1/2} Vᵀ
  Matrix scaled = eig.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 1.0 / std::sqrt(eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= s;
  }
  Matrix u = x * (scaled * eig.vectors.transpose());
  return OrthogonalPoint::certify(std::move(u), 1e-10);
}

Matrix expm(const Matrix& k) {
  require_square(k, "expm");
  const std::size_t n = k.rows();
  if (n == 0) return Matrix(0, 0);
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(k(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
  const Matrix a = std::ldexp(1.0, -squarings) * k;
  // Horner form of Σ_{j≤18} aʲ/j!; with ‖a‖₁ ≤ 1/4 the tail is below 1e-30.
  const Matrix id = Matrix::identity(n);
  Matrix r = id;
  for (int j = 18; j >= 1; --j) r = id + (1.0 / j) * (a * r);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

Matrix random_skew(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(skew_dim(n));
  for (double& v : c) v = normal(rng);
  return from_skew_coordinates(c, n);
}

}  // namespace orthomorse
