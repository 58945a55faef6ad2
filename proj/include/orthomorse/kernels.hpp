#pragma once

// Dense double-precision inner loops shared by every module.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, a SIMD variant (AVX2+FMA on x86-64, NEON on aarch64). The
// variant is chosen once at runtime from CPU feature detection; tests can pin
// a backend with force_backend() to check the variants against the reference.

#include <cstddef>
#include <string_view>
#include <vector>

namespace orthomorse::kernels {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
  /// C(m×n) = A(m×k) · B(k×n), row-major, C must not alias A or B.
  void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const double* a,
               const double* b, double* c);
  /// Σ a[i]·b[i]
  double (*dot)(std::size_t len, const double* a, const double* b);
  /// out[i] = alpha·x[i] + beta·y[i]; out may alias x or y.
  void (*axpby)(std::size_t len, double alpha, const double* x, double beta,
                const double* y, double* out);
  /// max |a[i] − b[i]|, 0 for empty input.
  double (*max_abs_diff)(std::size_t len, const double* a, const double* b);
  /// max |a[i]|, 0 for empty input.
  double (*max_abs)(std::size_t len, const double* a);
};

const KernelTable& scalar_table();
#if defined(ORTHOMORSE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(ORTHOMORSE_HAVE_NEON)
const KernelTable& neon_table();
#endif

/// Whether `b` was compiled in and the running CPU supports it.
bool available(Backend b);

/// Backends usable on this machine, scalar first.
std::vector<Backend> available_backends();

/// Best backend for this machine.
Backend detect_backend();

/// The table currently used by Matrix arithmetic.
const KernelTable& active();
Backend active_backend();

/// Pin the backend used by active(). Throws std::invalid_argument when the
/// backend is unavailable. Not thread-safe; call before spawning workers.
void force_backend(Backend b);

/// Kernel table for a given backend (throws if unavailable).
const KernelTable& table(Backend b);

std::string_view name(Backend b);

}  // namespace orthomorse::kernels
