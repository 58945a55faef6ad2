#pragma once

// Oracles shared by the unit tests. Everything here goes through Eigen rather
// than the library's own kernels so that the two can disagree.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "orthomorse/matrix.hpp"
#include "orthomorse/orthogonal.hpp"

namespace support {

using orthomorse::Matrix;
using orthomorse::OrthogonalPoint;

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

inline Matrix eigen_expm(const Matrix& k) { return from_eigen(to_eigen(k).exp()); }

inline Matrix gaussian(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (double& v : m.entries()) v = g(rng);
  return m;
}

inline Matrix skew(std::size_t n, std::mt19937_64& rng) {
  const Matrix g = gaussian(n, n, rng);
  return 0.5 * (g - g.transpose());
}

/// Orthogonal matrix from Eigen's Householder QR of a Gaussian matrix.
inline OrthogonalPoint eigen_orthogonal(std::size_t n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(to_eigen(gaussian(n, n, rng)));
  Eigen::MatrixXd q = qr.householderQ();
  return OrthogonalPoint::certify(from_eigen(q));
}

/// X·exp(hE) with Eigen's matrix exponential.
inline OrthogonalPoint geodesic(const OrthogonalPoint& x, const Matrix& e, double h) {
  return OrthogonalPoint::certify(x.mat() * eigen_expm(h * e), 1e-8);
}

/// d/dh g(h) at 0, central difference.
inline double first_derivative(const std::function<double(double)>& g, double h) {
  return (g(h) - g(-h)) / (2.0 * h);
}

/// d²/dh² g(h) at 0, five-point stencil.
inline double second_derivative(const std::function<double(double)>& g, double h) {
  return (-g(2 * h) + 16 * g(h) - 30 * g(0) + 16 * g(-h) - g(-2 * h)) / (12.0 * h * h);
}

inline double relative_error(double approx, double exact) {
  return std::abs(approx - exact) / std::max(std::abs(exact), 1.0);
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace support
