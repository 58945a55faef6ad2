#include "orthomorse/linalg.hpp"

#include <Eigen/Dense>

#include "orthomorse/errors.hpp"

namespace orthomorse {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const Matrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& a) {
  require_square(a, "symmetric_eigen");
  if (a.empty()) return {};
  const Eigen::MatrixXd s = 0.5 * (view(a) + view(a).transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw numerical_error("symmetric eigensolver failed");
  SymmetricEigen out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  out.vectors = from_eigen(es.eigenvectors());
  return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  require_square(a, "symmetric_eigenvalues");
  if (a.empty()) return {};
  const Eigen::MatrixXd s = 0.5 * (view(a) + view(a).transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numerical_error("symmetric eigensolver failed");
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

Matrix orthonormalize_columns(const Matrix& a) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  if (a.cols() > a.rows()) throw std::invalid_argument("orthonormalize_columns: more columns than rows");
  const Eigen::MatrixXd e = view(a);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(e);
  const Eigen::Index k = e.cols();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(e.rows(), k);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (std::abs(r(j, j)) < 1e-14) throw numerical_error("orthonormalize_columns: rank deficient");
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return from_eigen(q);
}

double determinant(const Matrix& a) {
  require_square(a, "determinant");
  if (a.empty()) return 1.0;
  return Eigen::MatrixXd(view(a)).partialPivLu().determinant();
}

}  // namespace orthomorse
