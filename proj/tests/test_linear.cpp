#include <doctest.h>

#include <random>

#include "orthomorse/combinatorics.hpp"
#include "orthomorse/errors.hpp"
#include "orthomorse/linalg.hpp"
#include "orthomorse/linear.hpp"
#include "support.hpp"

using namespace orthomorse;

namespace {

Matrix minus_block(std::size_t n, std::size_t k) {
  std::vector<double> d(n, 1.0);
  for (std::size_t i = 0; i < k; ++i) d[i] = -1.0;
  return Matrix::diagonal(d);
}

}  // namespace

TEST_CASE("linear problem needs a square matrix") {
  CHECK_THROWS_AS(LinearProblem(Matrix(2, 3)), std::invalid_argument);
  const LinearProblem prob(Matrix::identity(3));
  CHECK_THROWS_AS(linear_value(prob, OrthogonalPoint::certify(Matrix::identity(2))), std::invalid_argument);
}

TEST_CASE("gradient and Hessian against finite differences along geodesics") {
  std::mt19937_64 rng(61);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const LinearProblem prob(support::gaussian(n, n, rng));
      const OrthogonalPoint x = support::eigen_orthogonal(n, rng);
      const Matrix e = support::skew(n, rng);
      CHECK(linear_value(prob, x) == doctest::Approx(frobenius_dot(prob.a(), x.mat())));
      const Matrix g = linear_gradient(prob, x);
      CHECK(is_tangent(x, g, 1e-12));
      auto along = [&](double h) { return linear_value(prob, support::geodesic(x, e, h)); };
      CHECK(support::relative_error(support::first_derivative(along, 1e-5), frobenius_dot(g, x.mat() * e)) <= 1e-6);
      CHECK(support::relative_error(support::second_derivative(along, 1e-3),
                                    hessian_bilinear_linear(prob, x, e, e)) <= 1e-6);
    }
}

TEST_CASE("critical points of the trace are the symmetric orthogonal matrices") {
  const LinearProblem prob(Matrix::identity(4));
  std::mt19937_64 rng(62);
  for (std::size_t k = 0; k <= 4; ++k) {
    const Matrix basis = orthonormalize_columns(support::gaussian(4, k, rng));
    const GrassmannPoint l = GrassmannPoint::certify(basis);
    const OrthogonalPoint x = critical_of_subspace(l);
    CHECK(asymmetry(x.mat()) <= 1e-14);
    CHECK(is_critical_linear(prob, x, 1e-12));
    CHECK(max_abs(linear_gradient(prob, x)) <= 1e-12);
    CHECK(linear_value(prob, x) == doctest::Approx(4.0 - 2.0 * static_cast<double>(k)));
    const GrassmannPoint back = grassmannian_of_critical(x, 1e-10);
    CHECK(back.k() == k);
    CHECK(max_abs_diff(back.projector(), l.projector()) <= 1e-12);
  }
  CHECK_FALSE(is_critical_linear(prob, support::eigen_orthogonal(4, rng), 1e-6));
}

TEST_CASE("grassmannian_of_critical rejects non-symmetric input") {
  std::mt19937_64 rng(63);
  CHECK_THROWS_AS(grassmannian_of_critical(support::eigen_orthogonal(3, rng), 1e-8), numerical_error);
  CHECK_THROWS_AS(GrassmannPoint::certify(Matrix{{1.0}, {1.0}}), numerical_error);
}

TEST_CASE("the critical point depends on the subspace only") {
  std::mt19937_64 rng(64);
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 1; k < n; ++k) {
      const Matrix basis = orthonormalize_columns(support::gaussian(n, k, rng));
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(support::to_eigen(support::gaussian(k, k, rng)));
      const Matrix rot = support::from_eigen(Eigen::MatrixXd(qr.householderQ()));
      const auto x1 = critical_of_subspace(GrassmannPoint::certify(basis));
      const auto x2 = critical_of_subspace(GrassmannPoint::certify(basis * rot));
      CHECK(max_abs_diff(x1.mat(), x2.mat()) <= 1e-13);
    }
}

TEST_CASE("index C(n-k,2) and nullity k(n-k) at -I_k + I_(n-k)") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const LinearProblem prob(Matrix::identity(n));
    for (std::size_t k = 0; k <= n; ++k) {
      const QuadraticForm form = hessian_form_linear(prob, OrthogonalPoint::certify(minus_block(n, k)));
      const IndexNullity in = index_nullity(form);
      CHECK(in.index == support::binomial(static_cast<long long>(n - k), 2));
      CHECK(in.nullity == static_cast<long long>(k * (n - k)));
    }
  }
}

TEST_CASE("index is constant along each critical Grassmannian") {
  std::mt19937_64 rng(65);
  const LinearProblem prob(Matrix::identity(5));
  for (std::size_t k = 0; k <= 5; ++k) {
    const auto x = critical_of_subspace(GrassmannPoint::certify(orthonormalize_columns(support::gaussian(5, k, rng))));
    const IndexNullity in = index_nullity(hessian_form_linear(prob, x));
    CHECK(in.index == support::binomial(static_cast<long long>(5 - k), 2));
    CHECK(in.nullity == static_cast<long long>(k * (5 - k)));
  }
}

TEST_CASE("distinct diagonal entries give nondegenerate sign-matrix critical points") {
  // For A = Diag(d), X = Diag(s): H(E,E) = −Σ_{p<q} (d_p s_p + d_q s_q) E_pq².
  const std::vector<double> d{1.0, 2.0, 3.5, 5.0};
  const LinearProblem prob(Matrix::diagonal(d));
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<double> s(4);
    for (int i = 0; i < 4; ++i) s[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    const OrthogonalPoint x = OrthogonalPoint::certify(Matrix::diagonal(s));
    CHECK(is_critical_linear(prob, x, 1e-14));
    long long expected = 0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) expected += d[p] * s[p] + d[q] * s[q] > 0;
    const IndexNullity in = index_nullity(hessian_form_linear(prob, x));
    CHECK(in.nullity == 0);
    CHECK(in.index == expected);
  }
}

TEST_CASE("Morse inequalities are equalities for SO(n)") {
  for (int n = 1; n <= 10; ++n) {
    const MorseInequalityReport r = morse_inequality_report(n);
    CHECK(r.all_equal);
    for (const auto& row : r.rows) CHECK(row.lhs == so_betti(row.degree, n));
  }
  // SO(3): 1 + t + t² + t³ = (1 + t + t²) + t³.
  const MorseInequalityReport r3 = morse_inequality_report(3);
  REQUIRE(r3.rows.size() == 4);
  for (const auto& row : r3.rows) {
    CHECK(row.lhs == 1);
    CHECK(row.rhs == 1);
  }
  CHECK(grassmannian_poincare(2, 3) == IntPolynomial({1, 1, 1}));
  CHECK(grassmannian_poincare(0, 3).shifted(iota(0, 3, IotaConvention::ComplementChoose2)) ==
        IntPolynomial({0, 0, 0, 1}));
}

TEST_CASE("hand-checked trace values and critical points") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const LinearProblem prob(Matrix::identity(n));
    const OrthogonalPoint id = OrthogonalPoint::certify(Matrix::identity(n));
    CHECK(linear_value(prob, id) == static_cast<double>(n));
    CHECK(max_abs(linear_gradient(prob, id)) == 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      CHECK(linear_value(prob, OrthogonalPoint::certify(minus_block(n, k))) ==
            static_cast<double>(n) - 2.0 * static_cast<double>(k));
  }
  Matrix corner(3, 3);
  corner(2, 2) = 1.0;
  const LinearProblem last(corner);
  std::mt19937_64 rng(66);
  const OrthogonalPoint x = support::eigen_orthogonal(3, rng);
  CHECK(linear_value(last, x) == x(2, 2));
  CHECK(is_critical_linear(last, OrthogonalPoint::certify(Matrix::identity(3)), 1e-14));
  CHECK(is_critical_linear(last, OrthogonalPoint::certify(-Matrix::identity(3)), 1e-14));
}

TEST_CASE("subspaces of the sign matrices") {
  CHECK(grassmannian_of_critical(OrthogonalPoint::certify(Matrix::identity(3)), 1e-10).k() == 0);
  const GrassmannPoint two = grassmannian_of_critical(OrthogonalPoint::certify(minus_block(3, 2)), 1e-10);
  CHECK(two.k() == 2);
  CHECK(max_abs_diff(two.projector(), Matrix::diagonal(std::vector<double>{1.0, 1.0, 0.0})) <= 1e-14);
  CHECK(critical_of_subspace(GrassmannPoint::certify(Matrix(3, 0))).mat() == Matrix::identity(3));
  CHECK(max_abs_diff(critical_of_subspace(GrassmannPoint::certify(Matrix{{1.0}, {0.0}, {0.0}})).mat(),
                     minus_block(3, 1)) <= 1e-15);
  CHECK(max_abs_diff(critical_of_subspace(GrassmannPoint::certify(Matrix::identity(3))).mat(),
                     -Matrix::identity(3)) <= 1e-15);
}

TEST_CASE("trace Hessian at sign matrices is diagonal with entries in {-2, 0, 2}") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      const QuadraticForm form = hessian_form_linear(LinearProblem(Matrix::identity(n)),
                                                     OrthogonalPoint::certify(minus_block(n, k)));
      for (std::size_t r = 0; r < form.h.rows(); ++r)
        for (std::size_t c = 0; c < form.h.cols(); ++c) {
          const double v = form.h(r, c);
          if (r != c) CHECK(v == doctest::Approx(0.0));
          else CHECK((std::abs(v) <= 1e-14 || std::abs(std::abs(v) - 2.0) <= 1e-14));
        }
    }
  const IndexNullity in = index_nullity(hessian_form_linear(LinearProblem(Matrix::identity(3)),
                                                            OrthogonalPoint::certify(Matrix::identity(3))));
  CHECK(in.index == 3);
  CHECK(in.nullity == 0);
}

TEST_CASE("SO(1) has a single critical point") {
  const MorseInequalityReport r = morse_inequality_report(1);
  CHECK(r.all_equal);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].lhs == 1);
}
