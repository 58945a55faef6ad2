#include "orthomorse/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace orthomorse {

long long binomial2(long long k) { return k * (k - 1) / 2; }

namespace {
void extend_compositions(int rest, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = 1; part <= rest; ++part) {
    prefix.push_back(part);
    extend_compositions(rest - part, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace

std::vector<std::vector<int>> compositions(int n) {
  if (n < 1) throw std::invalid_argument("compositions requires n >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  extend_compositions(n, prefix, out);
  return out;
}

Margins::Margins(std::vector<int> rows, std::vector<int> cols) : m(std::move(rows)), n(std::move(cols)) {
  for (int v : m)
    if (v <= 0) throw std::invalid_argument("margins must be positive");
  for (int v : n)
    if (v <= 0) throw std::invalid_argument("margins must be positive");
  const long long sm = std::accumulate(m.begin(), m.end(), 0LL);
  const long long sn = std::accumulate(n.begin(), n.end(), 0LL);
  if (sm != sn)
    throw std::invalid_argument("margin sums differ: " + std::to_string(sm) + " vs " +
                                std::to_string(sn));
}

int Margins::total() const { return std::accumulate(m.begin(), m.end(), 0); }

PerfectFilling::PerfectFilling(Margins margins, std::vector<int> eps)
    : margins_(std::move(margins)), eps_(std::move(eps)) {
  const std::size_t s = margins_.s(), t = margins_.t();
  if (eps_.size() != s * t) throw std::invalid_argument("filling has wrong number of cells");
  for (int v : eps_)
    if (v < 0) throw std::invalid_argument("filling entries must be nonnegative");
  for (std::size_t i = 0; i < s; ++i) {
    int sum = 0;
    for (std::size_t j = 0; j < t; ++j) sum += (*this)(i, j);
    if (sum != margins_.m[i]) throw std::invalid_argument("filling row sum differs from margin");
  }
  for (std::size_t j = 0; j < t; ++j) {
    int sum = 0;
    for (std::size_t i = 0; i < s; ++i) sum += (*this)(i, j);
    if (sum != margins_.n[j]) throw std::invalid_argument("filling column sum differs from margin");
  }
}

namespace {

struct FillingEnumerator {
  const Margins& margins;
  std::size_t s, t;
  std::vector<int> row_rem, col_rem, cells;
  std::vector<PerfectFilling>& out;

  void visit(std::size_t cell) {
    if (cell == s * t) {
      out.emplace_back(margins, cells);
      return;
    }
    const std::size_t i = cell / t, j = cell % t;
    int lo = 0;
    int hi = std::min(row_rem[i], col_rem[j]);
    if (j + 1 == t) lo = row_rem[i];  // last column closes the row
    if (i + 1 == s) lo = std::max(lo, col_rem[j]);  // last row closes the column
    for (int v = lo; v <= hi; ++v) {
      cells[cell] = v;
      row_rem[i] -= v;
      col_rem[j] -= v;
      visit(cell + 1);
      row_rem[i] += v;
      col_rem[j] += v;
    }
  }
};

}  // namespace

std::vector<PerfectFilling> enumerate_fillings(const Margins& margins) {
  std::vector<PerfectFilling> out;
  if (margins.total() != std::accumulate(margins.n.begin(), margins.n.end(), 0))
    throw std::invalid_argument("margin sums differ");
  FillingEnumerator e{margins, margins.s(), margins.t(), margins.m, margins.n,
                      std::vector<int>(margins.s() * margins.t(), 0), out};
  e.visit(0);
  return out;
}

long long filling_index(const PerfectFilling& f) {
  long long total = 0;
  for (std::size_t i = 0; i < f.s(); ++i)
    for (std::size_t j = 0; j < f.t(); ++j) {
      if (f(i, j) == 0) continue;
      long long below_right = 0;
      for (std::size_t k = i + 1; k < f.s(); ++k)
        for (std::size_t l = j + 1; l < f.t(); ++l) below_right += f(k, l);
      total += f(i, j) * below_right;
    }
  return total;
}

long long component_dimension(const PerfectFilling& f) {
  long long d = 0;
  for (int mi : f.margins().m) d += binomial2(mi);
  for (int nj : f.margins().n) d += binomial2(nj);
  for (int e : f.entries()) d -= binomial2(e);
  return d;
}

namespace {
// block_of[r] = index of the block containing 0-based position r.
std::vector<std::size_t> block_lookup(const std::vector<int>& sizes) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < sizes.size(); ++b) out.insert(out.end(), sizes[b], b);
  return out;
}
}  // namespace

PerfectFilling filling_of_spm(const SignedPermutation& sp, const Margins& margins) {
  if (margins.total() != static_cast<int>(sp.n()))
    throw std::invalid_argument("margins do not sum to the permutation size");
  const auto row_block = block_lookup(margins.m);
  const auto col_block = block_lookup(margins.n);
  std::vector<int> eps(margins.s() * margins.t(), 0);
  // Column c of S·P_σ has its only nonzero entry in row σ(c).
  for (std::size_t c = 0; c < sp.n(); ++c) {
    const std::size_t r = static_cast<std::size_t>(sp.perm()[c] - 1);
    ++eps[row_block[r] * margins.t() + col_block[c]];
  }
  return PerfectFilling(margins, std::move(eps));
}

long long inversion_stat(const std::vector<int>& perm) {
  SignedPermutation check(std::vector<int>(perm.size(), 1), perm);  // validates bijection
  long long count = 0;
  for (std::size_t p = 0; p < perm.size(); ++p)
    for (std::size_t q = p + 1; q < perm.size(); ++q)
      if (perm[q] > perm[p]) ++count;
  return count;
}

SubsetDegrees subset_degrees(std::vector<int> subset, int n) {
  if (n < 0) throw std::invalid_argument("subset_degrees: negative n");
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    throw std::invalid_argument("subset_degrees: repeated element");
  std::vector<bool> in(static_cast<std::size_t>(n) + 1, false);
  for (int v : subset) {
    if (v < 1 || v > n)
      throw std::invalid_argument("subset_degrees: element " + std::to_string(v) +
                                  " outside 1.." + std::to_string(n));
    in[v] = true;
  }
  SubsetDegrees d{n, subset, 0, 0};
  long long sdeg_pairs = 0;
  for (int q : subset) {
    for (int p = 1; p < q; ++p)
      if (!in[p]) ++d.deg;
    sdeg_pairs += q - 1;
  }
  d.sdeg = binomial2(static_cast<long long>(subset.size())) + d.deg;
  if (d.sdeg != sdeg_pairs) throw std::logic_error("sdeg formulas disagree");
  return d;
}

namespace {

void require_enumerable(int n) {
  if (n < 0 || n > kMaxEnumerationN)
    throw std::invalid_argument("subset enumeration supports 0 <= n <= " +
                                std::to_string(kMaxEnumerationN) + ", got " + std::to_string(n));
}

// deg of the subset encoded by `mask` (bit q−1 set iff q ∈ S).
int mask_deg(std::uint32_t mask) {
  int deg = 0;
  std::uint32_t rest = mask;
  while (rest) {
    const int q0 = std::countr_zero(rest);  // q − 1
    rest &= rest - 1;
    const std::uint32_t below = (std::uint32_t{1} << q0) - 1;
    deg += std::popcount(below & ~mask);
  }
  return deg;
}

}  // namespace

std::vector<std::vector<BigInt>> grassmannian_betti_table(int n) {
  require_enumerable(n);
  std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) counts[k].assign(static_cast<std::size_t>(k * (n - k)) + 1, 0);
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const auto m = static_cast<std::uint32_t>(mask);
    ++counts[std::popcount(m)][mask_deg(m)];
  }
  std::vector<std::vector<BigInt>> out(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k)
    out[k].assign(counts[k].begin(), counts[k].end());
  return out;
}

BigInt grassmannian_betti(int i, int k, int n) {
  if (k < 0 || k > n) throw std::invalid_argument("grassmannian_betti requires 0 <= k <= n");
  return grassmannian_poincare(k, n).coefficient(i);
}

BigInt group_betti_c(int i, int n) {
  if (n < 1) throw std::invalid_argument("group_betti_c requires n >= 1");
  return group_poincare_c(n).coefficient(i);
}

BigInt so_betti(int i, int n) {
  if (n < 1) throw std::invalid_argument("so_betti requires n >= 1");
  return so_poincare_enumerated(n).coefficient(i);
}

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c < 0) throw std::invalid_argument("IntPolynomial coefficients must be nonnegative");
  trim();
}

IntPolynomial IntPolynomial::monomial(int degree, BigInt c) {
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = std::move(c);
  return IntPolynomial(std::move(v));
}

BigInt IntPolynomial::coefficient(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

IntPolynomial IntPolynomial::shifted(int k) const {
  if (k < 0) throw std::invalid_argument("IntPolynomial::shifted: negative shift");
  if (is_zero()) return {};
  std::vector<BigInt> v(static_cast<std::size_t>(k), 0);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPolynomial(std::move(v));
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(v));
}

bool IntPolynomial::dominates(const IntPolynomial& b) const {
  for (int i = 0; i <= std::max(degree(), b.degree()); ++i)
    if (coefficient(i) < b.coefficient(i)) return false;
  return true;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || coeffs_[i] != 1) os << coeffs_[i];
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial poincare_so(int n) {
  if (n < 1) throw std::invalid_argument("poincare_so requires n >= 1");
  IntPolynomial p = IntPolynomial::monomial(0);
  for (int k = 2; k <= n; ++k) p = p + p.shifted(k - 1);
  return p;
}

IntPolynomial grassmannian_poincare(int k, int n) {
  if (k < 0 || k > n) throw std::invalid_argument("grassmannian_poincare requires 0 <= k <= n");
  return IntPolynomial(grassmannian_betti_table(n)[static_cast<std::size_t>(k)]);
}

IntPolynomial group_poincare_c(int n) {
  require_enumerable(n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(binomial2(n)) + 1, 0);
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const auto m = static_cast<std::uint32_t>(mask);
    // sdeg S = Σ_{q∈S} (q − 1)
    int sdeg = 0;
    for (std::uint32_t rest = m; rest; rest &= rest - 1) sdeg += std::countr_zero(rest);
    ++counts[static_cast<std::size_t>(sdeg)];
  }
  return IntPolynomial(std::vector<BigInt>(counts.begin(), counts.end()));
}

IntPolynomial so_poincare_enumerated(int n) {
  if (n < 1) throw std::invalid_argument("so_poincare_enumerated requires n >= 1");
  require_enumerable(n - 1);
  const int m = n - 1;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(binomial2(n)) + 1, 0);
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    int sum = 0;
    for (auto rest = static_cast<std::uint32_t>(mask); rest; rest &= rest - 1)
      sum += std::countr_zero(rest) + 1;
    ++counts[static_cast<std::size_t>(sum)];
  }
  return IntPolynomial(std::vector<BigInt>(counts.begin(), counts.end()));
}

int iota(int k, int n, IotaConvention convention) {
  return static_cast<int>(convention == IotaConvention::KChoose2 ? binomial2(k)
                                                                 : binomial2(n - k));
}

FrankelReport frankel_report(int n, IotaConvention convention) {
  if (n < 1) throw std::invalid_argument("frankel_report requires n >= 1");
  const IntPolynomial lhs = poincare_so(n) + poincare_so(n);
  const auto table = grassmannian_betti_table(n);
  IntPolynomial rhs;
  for (int k = 0; k <= n; ++k)
    rhs += IntPolynomial(table[static_cast<std::size_t>(k)]).shifted(iota(k, n, convention));
  FrankelReport report{n, convention, {}, true};
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
