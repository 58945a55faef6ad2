#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "orthomorse/kernels.hpp"

namespace orthomorse::kernels {
namespace {

void gemm_neon(std::size_t m, std::size_t k, std::size_t n, const double* a,
               const double* b, double* c) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    std::fill(crow, crow + n, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const float64x2_t av = vdupq_n_f64(aip);
      const double* brow = b + p * n;
      std::size_t j = 0;
      for (; j < n2; j += 2)
        vst1q_f64(crow + j, vfmaq_f64(vld1q_f64(crow + j), av, vld1q_f64(brow + j)));
      for (; j < n; ++j) crow[j] = std::fma(aip, brow[j], crow[j]);
    }
  }
}

double dot_neon(std::size_t len, const double* a, const double* b) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(acc);
  for (; i < len; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

void axpby_neon(std::size_t len, double alpha, const double* x, double beta,
                const double* y, double* out) {
  const float64x2_t av = vdupq_n_f64(alpha);
  const float64x2_t bv = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2)
    vst1q_f64(out + i, vfmaq_f64(vmulq_f64(bv, vld1q_f64(y + i)), av, vld1q_f64(x + i)));
  for (; i < len; ++i) out[i] = std::fma(alpha, x[i], beta * y[i]);
}

double max_abs_diff_neon(std::size_t len, const double* a, const double* b) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2)
    m = vmaxq_f64(m, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double r = vmaxvq_f64(m);
  for (; i < len; ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

double max_abs_neon(std::size_t len, const double* a) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(a + i)));
  double r = vmaxvq_f64(m);
  for (; i < len; ++i) r = std::max(r, std::abs(a[i]));
  return r;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable t{gemm_neon, dot_neon, axpby_neon, max_abs_diff_neon,
                             max_abs_neon};
  return t;
}

}  // namespace orthomorse::kernels
