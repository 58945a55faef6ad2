#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "orthomorse/combinatorics.hpp"
#include "orthomorse/linear.hpp"
#include "support.hpp"

using namespace orthomorse;

namespace {

// Every s×t table with entries in 0..min(m_i, n_j), kept when the margins
// match, in the order the odometer visits them (row-major lexicographic).
std::vector<std::vector<int>> brute_force_tables(const Margins& mg) {
  const std::size_t s = mg.s(), t = mg.t();
  std::vector<int> cell(s * t, 0);
  std::vector<std::vector<int>> out;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < s && ok; ++i) {
      int sum = 0;
      for (std::size_t j = 0; j < t; ++j) sum += cell[i * t + j];
      ok = sum == mg.m[i];
    }
    for (std::size_t j = 0; j < t && ok; ++j) {
      int sum = 0;
      for (std::size_t i = 0; i < s; ++i) sum += cell[i * t + j];
      ok = sum == mg.n[j];
    }
    if (ok) out.push_back(cell);
    std::size_t pos = s * t;
    while (pos > 0) {
      --pos;
      const int cap = std::min(mg.m[pos / t], mg.n[pos % t]);
      if (cell[pos] < cap) {
        ++cell[pos];
        break;
      }
      cell[pos] = 0;
      if (pos == 0) return out;
    }
    if (s * t == 0) return out;
  }
}

// Gaussian binomial [n choose k]_t by the q-Pascal rule.
IntPolynomial gaussian_binomial(int n, int k) {
  if (k < 0 || k > n) return IntPolynomial();
  if (k == 0 || k == n) return IntPolynomial::monomial(0);
  return gaussian_binomial(n - 1, k - 1) + gaussian_binomial(n - 1, k).shifted(k);
}

IntPolynomial product_formula(int n) {
  IntPolynomial p = IntPolynomial::monomial(0);
  for (int j = 1; j < n; ++j) p = p * (IntPolynomial::monomial(0) + IntPolynomial::monomial(j));
  return p;
}

}  // namespace

TEST_CASE("margins validation") {
  CHECK_THROWS_AS(Margins({1, 2}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(Margins({0, 2}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(Margins({-1, 3}, {2}), std::invalid_argument);
  CHECK_NOTHROW(Margins({1, 2}, {3}));
  CHECK(Margins({1, 2}, {3}).total() == 3);
  const Margins mg({2, 1}, {1, 2});
  CHECK_THROWS_AS(PerfectFilling(mg, {1, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PerfectFilling(mg, {1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PerfectFilling(mg, {2, 0, -1, 2}), std::invalid_argument);
  CHECK_NOTHROW(PerfectFilling(mg, {0, 2, 1, 0}));
}

TEST_CASE("filling enumeration matches a brute-force odometer") {
  for (int total = 1; total <= 6; ++total)
    for (const auto& rows : compositions(total))
      for (const auto& cols : compositions(total)) {
        if (rows.size() * cols.size() > 12) continue;
        const Margins mg(rows, cols);
        const auto fast = enumerate_fillings(mg);
        const auto slow = brute_force_tables(mg);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].entries() == slow[i]);
      }
}

TEST_CASE("all-ones margins give the n! permutation matrices") {
  for (int n = 1; n <= 6; ++n) {
    const std::vector<int> ones(n, 1);
    const auto fs = enumerate_fillings(Margins(ones, ones));
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    CHECK(static_cast<long long>(fs.size()) == fact);
    for (const auto& f : fs) CHECK(component_dimension(f) == 0);
  }
  // The 3×3 case in ascending order starts at the anti-diagonal.
  const auto fs = enumerate_fillings(Margins({1, 1, 1}, {1, 1, 1}));
  CHECK(fs.front().entries() == std::vector<int>{0, 0, 1, 0, 1, 0, 1, 0, 0});
  CHECK(fs.back().entries() == std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("filling index and component dimension on small cases") {
  // A single block: X ranges over all of O(n).
  for (int n = 1; n <= 6; ++n) {
    const auto fs = enumerate_fillings(Margins({n}, {n}));
    REQUIRE(fs.size() == 1);
    CHECK(filling_index(fs[0]) == 0);
    CHECK(component_dimension(fs[0]) == support::binomial(n, 2));
  }
  const PerfectFilling f(Margins({2, 1}, {1, 2}), {1, 1, 0, 1});
  CHECK(filling_index(f) == 1);
  CHECK(component_dimension(f) == 1 + 1);
  const PerfectFilling g(Margins({2, 2}, {2, 2}), {1, 1, 1, 1});
  CHECK(filling_index(g) == 1);
  CHECK(component_dimension(g) == 1 + 1 + 1 + 1);
}

TEST_CASE("filling index of a permutation equals its order-preserving pair count") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    const std::vector<int> ones(n, 1);
    const Margins mg(ones, ones);
    do {
      long long pairs = 0;
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) pairs += perm[q] > perm[p];
      CHECK(inversion_stat(perm) == pairs);
      const SignedPermutation sp(std::vector<int>(n, 1), perm);
      CHECK(filling_index(filling_of_spm(sp, mg)) == pairs);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("filling of a signed permutation ignores the signs") {
  const Margins mg({2, 1}, {1, 2});
  for (const auto& sp : all_signed_permutations(3)) {
    const PerfectFilling f = filling_of_spm(sp, mg);
    CHECK(f.margins() == mg);
    const SignedPermutation unsigned_sp(std::vector<int>(3, 1), sp.perm());
    CHECK(f == filling_of_spm(unsigned_sp, mg));
  }
  CHECK_THROWS_AS(filling_of_spm(SignedPermutation::identity(2), mg), std::invalid_argument);
}

TEST_CASE("subset degrees") {
  const SubsetDegrees d = subset_degrees({3, 1}, 4);
  CHECK(d.subset == std::vector<int>{1, 3});
  CHECK(d.deg == 1);   // (2,3)
  CHECK(d.sdeg == 2);  // (1,3) and (2,3)
  CHECK(subset_degrees({}, 3).sdeg == 0);
  CHECK(subset_degrees({1, 2, 3}, 3).deg == 0);
  CHECK_THROWS_AS(subset_degrees({0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(subset_degrees({4}, 3), std::invalid_argument);
  CHECK_THROWS_AS(subset_degrees({2, 2}, 3), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic") {
  const IntPolynomial a({1, 2});
  const IntPolynomial b({0, 0, 3});
  CHECK((a + b) == IntPolynomial({1, 2, 3}));
  CHECK((a * b) == IntPolynomial({0, 0, 3, 6}));
  CHECK(a.shifted(2) == IntPolynomial({0, 0, 1, 2}));
  CHECK(IntPolynomial({1, 0, 0}).degree() == 0);
  CHECK(IntPolynomial().degree() == -1);
  CHECK(IntPolynomial().is_zero());
  CHECK(a.coefficient(5) == 0);
  CHECK(a.coefficient(-1) == 0);
  CHECK((a + b).dominates(a));
  CHECK_FALSE(a.dominates(b));
  CHECK(IntPolynomial({1, 1, 0, 1}).to_string() == "1 + t + t^3");
  CHECK(IntPolynomial().to_string() == "0");
}

TEST_CASE("Poincare polynomial of SO(n)") {
  CHECK(poincare_so(1) == IntPolynomial({1}));
  CHECK(poincare_so(3) == IntPolynomial({1, 1, 1, 1}));
  for (int n = 1; n <= 14; ++n) {
    CHECK(poincare_so(n) == product_formula(n));
    CHECK(so_poincare_enumerated(n) == poincare_so(n));
    CHECK(poincare_so(n).degree() == support::binomial(n, 2));
  }
  CHECK_THROWS_AS(poincare_so(0), std::invalid_argument);
}

TEST_CASE("Grassmannian Betti numbers are Gaussian binomial coefficients") {
  for (int n = 0; n <= 10; ++n) {
    const auto table = grassmannian_betti_table(n);
    REQUIRE(static_cast<int>(table.size()) == n + 1);
    BigInt subsets = 0;
    for (int k = 0; k <= n; ++k) {
      const IntPolynomial p = grassmannian_poincare(k, n);
      CHECK(p == gaussian_binomial(n, k));
      CHECK(IntPolynomial(table[k]) == p);
      for (int i = 0; i <= p.degree(); ++i) {
        CHECK(grassmannian_betti(i, k, n) == p.coefficient(i));
        subsets += p.coefficient(i);
      }
    }
    CHECK(subsets == (BigInt(1) << n));
  }
}

TEST_CASE("group Betti numbers sum over the Grassmannians") {
  for (int n = 1; n <= 10; ++n) {
    IntPolynomial sum;
    for (int k = 0; k <= n; ++k)
      sum += grassmannian_poincare(k, n).shifted(static_cast<int>(support::binomial(k, 2)));
    CHECK(sum == group_poincare_c(n));
    for (int i = 0; i <= sum.degree(); ++i) CHECK(group_betti_c(i, n) == sum.coefficient(i));
  }
}

TEST_CASE("Frankel identity holds under both index conventions") {
  for (int n = 1; n <= 12; ++n)
    for (auto conv : {IotaConvention::KChoose2, IotaConvention::ComplementChoose2}) {
      const FrankelReport r = frankel_report(n, conv);
      CHECK(r.all_equal);
      CHECK(static_cast<long long>(r.rows.size()) == support::binomial(n, 2) + 1);
      for (const auto& row : r.rows) {
        CHECK(row.lhs == 2 * so_betti(row.degree, n));
        CHECK(row.lhs == group_betti_c(row.degree, n));
      }
    }
  CHECK(iota(2, 5, IotaConvention::KChoose2) == 1);
  CHECK(iota(2, 5, IotaConvention::ComplementChoose2) == 3);
}

TEST_CASE("the Morse counting polynomial dominates twice the Betti polynomial") {
  // Each permutation filling is the fillings of 2ⁿ signed permutations, all
  // nondegenerate critical points of that index on O(n).
  for (int n = 1; n <= 5; ++n) {
    const std::vector<int> ones(n, 1);
    IntPolynomial morse;
    for (const auto& f : enumerate_fillings(Margins(ones, ones)))
      morse += IntPolynomial::monomial(static_cast<int>(filling_index(f)), BigInt(1) << n);
    CHECK(morse.dominates(poincare_so(n) + poincare_so(n)));
  }
}

TEST_CASE("large n stays exact") {
  const IntPolynomial p = poincare_so(30);
  CHECK(p.degree() == 435);
  BigInt total = 0;
  for (const auto& c : p.coeffs()) total += c;
  CHECK(total == (BigInt(1) << 29));
  CHECK(p.coefficient(0) == 1);
  CHECK(p.coefficient(435) == 1);
}

TEST_CASE("compositions") {
  CHECK(compositions(3) == std::vector<std::vector<int>>{{1, 1, 1}, {1, 2}, {2, 1}, {3}});
  for (int n = 1; n <= 10; ++n) CHECK(compositions(n).size() == (std::size_t{1} << (n - 1)));
  CHECK(binomial2(5) == 10);
  CHECK(binomial2(1) == 0);
  CHECK(binomial2(0) == 0);
}

TEST_CASE("hand-checked fillings") {
  const auto fs = enumerate_fillings(Margins({1, 2}, {2, 1}));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].entries() == std::vector<int>{0, 1, 2, 0});
  CHECK(fs[1].entries() == std::vector<int>{1, 0, 1, 1});
  CHECK(filling_index(PerfectFilling(Margins({1, 1}, {1, 1}), {1, 0, 0, 1})) == 1);
  CHECK(filling_index(PerfectFilling(Margins({1, 1}, {1, 1}), {0, 1, 1, 0})) == 0);
  CHECK(component_dimension(PerfectFilling(Margins({1, 1}, {2}), {1, 1})) == 1);
  CHECK(component_dimension(PerfectFilling(Margins({3}, {3}), {3})) == 3);
  const PerfectFilling id3 = filling_of_spm(SignedPermutation::identity(3), Margins({2, 1}, {1, 2}));
  CHECK(id3.entries() == std::vector<int>{1, 1, 0, 1});
  CHECK(filling_of_spm(SignedPermutation({-1, 1, -1}, {1, 2, 3}), Margins({1, 1, 1}, {1, 1, 1})).entries() ==
        std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("order-preserving pairs by hand") {
  CHECK(inversion_stat({1, 2, 3}) == 3);
  CHECK(inversion_stat({3, 2, 1}) == 0);
  CHECK(inversion_stat({2, 1, 3}) == 2);
}

TEST_CASE("subset degree recursion when n joins the subset") {
  CHECK(subset_degrees({2}, 2).deg == 1);
  CHECK(subset_degrees({2}, 2).sdeg == 1);
  for (int n = 2; n <= 8; ++n)
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n - 1; ++i)
        if (mask >> i & 1) s.push_back(i + 1);
      std::vector<int> with_n = s;
      with_n.push_back(n);
      CHECK(subset_degrees(with_n, n).sdeg == n - 1 + subset_degrees(s, n - 1).sdeg);
    }
}

TEST_CASE("small Betti numbers by hand") {
  CHECK(grassmannian_betti(0, 1, 2) == 1);
  CHECK(grassmannian_betti(1, 1, 2) == 1);
  for (int n = 0; n <= 5; ++n)
    for (int i = 0; i <= 4; ++i) CHECK(grassmannian_betti(i, 0, n) == (i == 0 ? 1 : 0));
  for (int i = 0; i <= 2; ++i) CHECK(grassmannian_betti(i, 2, 3) == 1);
  CHECK(grassmannian_betti(3, 2, 3) == 0);
  CHECK(group_betti_c(0, 1) == 2);
  CHECK(group_betti_c(1, 1) == 0);
  CHECK(group_betti_c(0, 2) == 2);
  CHECK(group_betti_c(1, 2) == 2);
  for (int n = 2; n <= 10; ++n)
    for (int i = 0; i <= support::binomial(n, 2); ++i)
      CHECK(group_betti_c(i, n) == group_betti_c(i, n - 1) + group_betti_c(i + 1 - n, n - 1));
  for (int i = 0; i <= 3; ++i) CHECK(so_betti(i, 3) == 1);
  CHECK(so_betti(4, 3) == 0);
  for (int n = 1; n <= 12; ++n) CHECK(so_betti(0, n) == 1);
  const FrankelReport r3 = frankel_report(3, IotaConvention::KChoose2);
  for (const auto& row : r3.rows) {
    CHECK(row.lhs == 2);
    CHECK(row.rhs == 2);
  }
  const FrankelReport r1 = frankel_report(1, IotaConvention::ComplementChoose2);
  REQUIRE(r1.rows.size() == 1);
  CHECK(r1.rows[0].lhs == 2);
  CHECK(r1.rows[0].rhs == 2);
}
