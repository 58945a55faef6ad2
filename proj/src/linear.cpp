#include "orthomorse/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "orthomorse/errors.hpp"
#include "orthomorse/linalg.hpp"

namespace orthomorse {

LinearProblem::LinearProblem(Matrix a) : a_(std::move(a)) { require_square(a_, "LinearProblem"); }

GrassmannPoint GrassmannPoint::certify(Matrix basis) {
  if (basis.cols() > basis.rows())
    throw std::invalid_argument("GrassmannPoint: more basis vectors than dimensions");
  const double r = max_abs_diff(basis.transpose() * basis, Matrix::identity(basis.cols()));
  if (!(r <= 1e-10))
    throw numerical_error("GrassmannPoint: basis is not orthonormal (residual " + format_magnitude(r) + ")");
  return GrassmannPoint(std::move(basis));
}

Matrix GrassmannPoint::projector() const { return basis_ * basis_.transpose(); }

namespace {
void require_size(const LinearProblem& prob, const OrthogonalPoint& x, const char* what) {
  if (x.n() != prob.n())
    throw std::invalid_argument(std::string(what) + ": point has size " + std::to_string(x.n()) +
                                ", problem has n=" + std::to_string(prob.n()));
}
}  // namespace

double linear_value(const LinearProblem& prob, const OrthogonalPoint& x) {
  require_size(prob, x, "linear_value");
  return frobenius_dot(prob.a(), x.mat());
}

Matrix linear_gradient(const LinearProblem& prob, const OrthogonalPoint& x) {
  require_size(prob, x, "linear_gradient");
  return 0.5 * (prob.a() - x.mat() * prob.a().transpose() * x.mat());
}

bool is_critical_linear(const LinearProblem& prob, const OrthogonalPoint& x, double tol) {
  require_size(prob, x, "is_critical_linear");
  return asymmetry(x.mat() * prob.a().transpose()) <= tol;
}

GrassmannPoint grassmannian_of_critical(const OrthogonalPoint& x, double tol) {
  const double defect = asymmetry(x.mat());
  if (!(defect <= tol))
    throw numerical_error("grassmannian_of_critical: X is not symmetric (asymmetry " +
                          format_magnitude(defect) + ")");
  const SymmetricEigen eig = symmetric_eigen(x.mat());
  std::vector<std::size_t> minus;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values[k];
    if (std::abs(lambda + 1.0) < 1e-6)
      minus.push_back(k);
    else if (!(std::abs(lambda - 1.0) < 1e-6))
      throw numerical_error("grassmannian_of_critical: eigenvalue " + format_magnitude(lambda) +
                            " is not near +1 or -1");
  }
  Matrix basis(x.n(), minus.size());
  for (std::size_t c = 0; c < minus.size(); ++c)
    for (std::size_t r = 0; r < x.n(); ++r) basis(r, c) = eig.vectors(r, minus[c]);
  return GrassmannPoint::certify(orthonormalize_columns(basis));
}

OrthogonalPoint critical_of_subspace(const GrassmannPoint& subspace) {
  return OrthogonalPoint::certify(Matrix::identity(subspace.n()) - 2.0 * subspace.projector());
}

double hessian_bilinear_linear(const LinearProblem& prob, const OrthogonalPoint& x, const Matrix& e,
                               const Matrix& nn) {
  require_size(prob, x, "hessian_bilinear_linear");
  require_same_shape(x.mat(), e, "hessian_bilinear_linear");
  require_same_shape(x.mat(), nn, "hessian_bilinear_linear");
  return trace_of_product(prob.a().transpose() * x.mat(), e * nn);
}

QuadraticForm hessian_form_linear(const LinearProblem& prob, const OrthogonalPoint& x) {
  require_size(prob, x, "hessian_form_linear");
  const std::size_t n = prob.n();
  const Matrix atx = prob.a().transpose() * x.mat();
  const auto idx = skew_indices(n);
  std::vector<Matrix> basis;
  for (auto i : idx) basis.push_back(skew_basis(i, n));
  Matrix raw(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) raw(r, c) = trace_of_product(atx, basis[r] * basis[c]);
  QuadraticForm form;
  form.n = n;
  form.asymmetry_defect = asymmetry(raw);
  form.h = symmetric_part(raw);
  form.scale = max_abs(prob.a());
  return form;
}

MorseInequalityReport morse_inequality_report(int n) {
  if (n < 1) throw std::invalid_argument("morse_inequality_report requires n >= 1");
  const IntPolynomial lhs = poincare_so(n);
  const auto table = grassmannian_betti_table(n);
  IntPolynomial rhs;
  for (int k2 = 0; k2 <= n; k2 += 2)
    rhs += IntPolynomial(table[static_cast<std::size_t>(k2)]).shifted(static_cast<int>(binomial2(n - k2)));
  MorseInequalityReport report{n, {}, true};
  const int top = std::max({lhs.degree(), rhs.degree(), static_cast<int>(binomial2(n))});
  for (int i = 0; i <= top; ++i) {
    DegreeComparison row{i, lhs.coefficient(i), rhs.coefficient(i), false};
    row.equal = row.lhs == row.rhs;
    report.all_equal = report.all_equal && row.equal;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace orthomorse
