#include <atomic>
#include <stdexcept>
#include <string>

#include "orthomorse/kernels.hpp"

namespace orthomorse::kernels {
namespace {

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect_backend()};
  return b;
}

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(ORTHOMORSE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(ORTHOMORSE_HAVE_NEON)
      return true;  // Advanced SIMD is mandatory on aarch64.
#else
      return false;
#endif
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
    if (available(b)) out.push_back(b);
  return out;
}

Backend detect_backend() {
  if (available(Backend::Avx2)) return Backend::Avx2;
  if (available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

const KernelTable& table(Backend b) {
  if (!available(b))
    throw std::invalid_argument("kernel backend unavailable: " + std::string(name(b)));
  switch (b) {
#if defined(ORTHOMORSE_HAVE_AVX2)
    case Backend::Avx2:
      return avx2_table();
#endif
#if defined(ORTHOMORSE_HAVE_NEON)
    case Backend::Neon:
      return neon_table();
#endif
    default:
      return scalar_table();
  }
}

const KernelTable& active() { return table(current().load(std::memory_order_relaxed)); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  table(b);  // validates
  current().store(b, std::memory_order_relaxed);
}

std::string_view name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

}  // namespace orthomorse::kernels
