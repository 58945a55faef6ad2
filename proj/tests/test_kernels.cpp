#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "orthomorse/kernels.hpp"
#include "orthomorse/matrix.hpp"
#include "support.hpp"

using namespace orthomorse;
namespace k = orthomorse::kernels;

namespace {

std::vector<double> random_vector(std::size_t len, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> v(len);
  for (double& x : v) x = u(rng);
  return v;
}

struct BackendGuard {
  k::Backend saved = k::active_backend();
  ~BackendGuard() { k::force_backend(saved); }
};

}  // namespace

TEST_CASE("scalar backend is always available and listed first") {
  const auto backends = k::available_backends();
  REQUIRE_FALSE(backends.empty());
  CHECK(backends.front() == k::Backend::Scalar);
  CHECK(k::available(k::detect_backend()));
  CHECK(k::name(k::Backend::Scalar) == "scalar");
}

TEST_CASE("vector kernels agree with the scalar reference for every length") {
  std::mt19937_64 rng(11);
  const auto& ref = k::scalar_table();
  for (k::Backend b : k::available_backends()) {
    CAPTURE(k::name(b));
    const auto& t = k::table(b);
    for (std::size_t len = 0; len <= 67; ++len) {
      CAPTURE(len);
      const auto x = random_vector(len, rng);
      const auto y = random_vector(len, rng);
      double mag = 1.0;
      for (std::size_t i = 0; i < len; ++i) mag += std::abs(x[i] * y[i]);
      CHECK(std::abs(t.dot(len, x.data(), y.data()) - ref.dot(len, x.data(), y.data())) <= 1e-13 * mag);
      CHECK(t.max_abs(len, x.data()) == ref.max_abs(len, x.data()));
      CHECK(t.max_abs_diff(len, x.data(), y.data()) == ref.max_abs_diff(len, x.data(), y.data()));

      std::vector<double> out_t(len), out_r(len);
      t.axpby(len, 0.75, x.data(), -1.25, y.data(), out_t.data());
      ref.axpby(len, 0.75, x.data(), -1.25, y.data(), out_r.data());
      for (std::size_t i = 0; i < len; ++i) CHECK(out_t[i] == doctest::Approx(out_r[i]).epsilon(1e-15));

      std::vector<double> alias = x;
      t.axpby(len, 2.0, alias.data(), 1.0, y.data(), alias.data());
      for (std::size_t i = 0; i < len; ++i) CHECK(alias[i] == doctest::Approx(2.0 * x[i] + y[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("empty inputs give zero") {
  for (k::Backend b : k::available_backends()) {
    const auto& t = k::table(b);
    CHECK(t.dot(0, nullptr, nullptr) == 0.0);
    CHECK(t.max_abs(0, nullptr) == 0.0);
    CHECK(t.max_abs_diff(0, nullptr, nullptr) == 0.0);
  }
}

TEST_CASE("gemm agrees with the scalar reference on ragged shapes") {
  std::mt19937_64 rng(12);
  const auto& ref = k::scalar_table();
  const std::size_t dims[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 13, 17, 33};
  for (k::Backend b : k::available_backends()) {
    CAPTURE(k::name(b));
    const auto& t = k::table(b);
    for (std::size_t m : dims)
      for (std::size_t kk : dims)
        for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{6}, std::size_t{9},
                              std::size_t{16}}) {
          const auto a = random_vector(m * kk, rng);
          const auto bb = random_vector(kk * n, rng);
          std::vector<double> ct(m * n, -7.0), cr(m * n, 7.0);
          t.gemm(m, kk, n, a.data(), bb.data(), ct.data());
          ref.gemm(m, kk, n, a.data(), bb.data(), cr.data());
          for (std::size_t i = 0; i < m * n; ++i)
            CHECK(std::abs(ct[i] - cr[i]) <= 1e-12 * (1.0 + std::abs(cr[i])) * (1.0 + static_cast<double>(kk)));
        }
  }
}

TEST_CASE("matrix product under every backend matches Eigen") {
  BackendGuard guard;
  std::mt19937_64 rng(13);
  for (k::Backend b : k::available_backends()) {
    k::force_backend(b);
    CHECK(k::active_backend() == b);
    for (std::size_t n : {1, 2, 5, 8, 11}) {
      const Matrix a = support::gaussian(n, n + 2, rng);
      const Matrix c = support::gaussian(n + 2, n, rng);
      const Matrix expected = support::from_eigen(support::to_eigen(a) * support::to_eigen(c));
      CHECK(max_abs_diff(a * c, expected) <= 1e-12);
    }
  }
}

TEST_CASE("forcing an unavailable backend throws") {
  for (k::Backend b : {k::Backend::Avx2, k::Backend::Neon})
    if (!k::available(b)) {
      CHECK_THROWS_AS(k::force_backend(b), std::invalid_argument);
      CHECK_THROWS_AS(k::table(b), std::invalid_argument);
    }
}
