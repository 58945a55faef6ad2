#include <algorithm>
#include <cmath>

#include "orthomorse/kernels.hpp"

namespace orthomorse::kernels {
namespace {

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const double* a,
                 const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    std::fill(crow, crow + n, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

double dot_scalar(std::size_t len, const double* a, const double* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s += a[i] * b[i];
  return s;
}

void axpby_scalar(std::size_t len, double alpha, const double* x, double beta,
                  const double* y, double* out) {
  for (std::size_t i = 0; i < len; ++i) out[i] = alpha * x[i] + beta * y[i];
}

double max_abs_diff_scalar(std::size_t len, const double* a, const double* b) {
  double m = 0.0;
  for (std::size_t i = 0; i < len; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_scalar(std::size_t len, const double* a) {
  double m = 0.0;
  for (std::size_t i = 0; i < len; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{gemm_scalar, dot_scalar, axpby_scalar,
                             max_abs_diff_scalar, max_abs_scalar};
  return t;
}

}  // namespace orthomorse::kernels
