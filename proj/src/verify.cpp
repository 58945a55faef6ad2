#include "orthomorse/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "orthomorse/combinatorics.hpp"
#include "orthomorse/flow.hpp"
#include "orthomorse/linalg.hpp"
#include "orthomorse/linear.hpp"
#include "orthomorse/orthogonal.hpp"

namespace orthomorse {

Spectrum random_spectrum(const std::vector<int>& mults, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> start(-1.0, 1.0), gap(0.5, 1.5);
  std::vector<double> values;
  double v = start(rng);
  for (std::size_t j = 0; j < mults.size(); ++j) {
    values.push_back(v);
    v += gap(rng);
  }
  return Spectrum(std::move(values), mults);
}

CriticalDecomposition random_decomposition(const QuadraticProblem& prob, std::mt19937_64& rng) {
  const auto fillings = enumerate_fillings(prob.margins());
  std::uniform_int_distribution<std::size_t> pick(0, fillings.size() - 1);
  CriticalDecomposition dec;
  dec.filling = fillings[pick(rng)];
  for (int m : prob.margins().m) dec.q.push_back(haar_orthogonal(m, rng, false).mat());
  for (int nj : prob.margins().n) dec.r.push_back(haar_orthogonal(nj, rng, false).mat());
  return dec;
}

QuadraticProblem distinct_problem(std::size_t n) {
  std::vector<double> v(n);
  std::iota(v.begin(), v.end(), 1.0);
  const std::vector<int> ones(n, 1);
  return QuadraticProblem(Spectrum(v, ones), Spectrum(v, ones));
}

namespace {

using Outcome = std::pair<bool, std::string>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

Outcome ok_if(bool pass, const std::string& detail) { return {pass, detail}; }

OrthogonalPoint along(const OrthogonalPoint& x, const Matrix& e, double h) {
  return OrthogonalPoint::certify(x.mat() * expm(h * e));
}

std::vector<Matrix> random_skews(const std::vector<int>& sizes, std::mt19937_64& rng) {
  std::vector<Matrix> out;
  for (int s : sizes) out.push_back(random_skew(s, rng));
  return out;
}

QuadraticProblem random_problem(int n, std::mt19937_64& rng) {
  const auto comps = compositions(n);
  std::uniform_int_distribution<std::size_t> pick(0, comps.size() - 1);
  return QuadraticProblem(random_spectrum(comps[pick(rng)], rng), random_spectrum(comps[pick(rng)], rng));
}

// ---- matrix-core ----

Outcome skew_basis_independent() {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto idx = skew_indices(n);
    Matrix stacked(idx.size(), n * n);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const Matrix e = skew_basis(idx[k], n);
      if (max_abs(e + e.transpose()) != 0.0) return {false, "E(p,q) not skew at n=" + std::to_string(n)};
      for (std::size_t c = 0; c < n * n; ++c) stacked(k, c) = e.data()[c];
    }
    const auto gram = symmetric_eigenvalues(stacked * stacked.transpose());
    if (gram.front() < 0.5) return {false, "basis is dependent at n=" + std::to_string(n)};
  }
  return {true, "n = 2..6"};
}

Outcome commutator_cases() {
  const std::size_t n = 5;
  long long cases = 0;
  for (auto e : skew_indices(n))
    for (int u = 1; u <= 5; ++u)
      for (int v = 1; v <= 5; ++v) {
        if (u == v) continue;
        const Matrix got = commutator(skew_basis(e, n), sym_basis(u, v, n));
        const int p = e.p, q = e.q;
        Matrix want(n, n);
        const bool pu = p == u, pv = p == v, qu = q == u, qv = q == v;
        if ((pu && qv) || (pv && qu))
          want = 2.0 * diag_unit(q, n) - 2.0 * diag_unit(p, n);
        else if (pu)
          want = sym_basis(q, v, n);
        else if (pv)
          want = sym_basis(q, u, n);
        else if (qv)
          want = -sym_basis(p, u, n);
        else if (qu)
          want = -sym_basis(p, v, n);
        if (!(got == want))
          return {false, "mismatch at E(" + std::to_string(p) + "," + std::to_string(q) + "), F(" +
                             std::to_string(u) + "," + std::to_string(v) + ")"};
        ++cases;
      }
  return {true, std::to_string(cases) + " index patterns"};
}

Outcome permutation_conjugation() {
  std::vector<int> perm{1, 2, 3, 4};
  long long cases = 0;
  do {
    const Matrix p = permutation_matrix(perm);
    for (int a = 1; a <= 4; ++a) {
      if (!(p * diag_unit(a, 4) * p.transpose() == diag_unit(perm[a - 1], 4)))
        return {false, "P D(p) Pᵀ mismatch"};
      for (int b = 1; b <= 4; ++b) {
        if (a == b) continue;
        if (!(p * sym_basis(a, b, 4) * p.transpose() == sym_basis(perm[a - 1], perm[b - 1], 4)))
          return {false, "P F(p,q) Pᵀ mismatch"};
        ++cases;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {true, std::to_string(cases) + " cases over S_4"};
}

Outcome spm_exact() {
  long long count = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& sp : all_signed_permutations(n)) {
      const Matrix x = spm_matrix(sp).mat();
      if (!(x.transpose() * x == Matrix::identity(n))) return {false, "XᵀX ≠ I"};
      ++count;
    }
  return {true, std::to_string(count) + " signed permutations, n ≤ 4"};
}

Outcome tangent_translates(std::mt19937_64& rng) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const OrthogonalPoint x = haar_orthogonal(n, rng, false);
      for (auto idx : skew_indices(n))
        if (!is_tangent(x, x.mat() * skew_basis(idx, n), 1e-12)) return {false, "X·E not tangent"};
    }
  return {true, "100 points, n = 2..6"};
}

// ---- combinatorics ----

Outcome fillings_permutations() {
  long long fact = 1;
  for (int n = 1; n <= 6; ++n) {
    fact *= n;
    const std::vector<int> ones(n, 1);
    const auto fs = enumerate_fillings(Margins(ones, ones));
    if (static_cast<long long>(fs.size()) != fact)
      return {false, "n=" + std::to_string(n) + ": " + std::to_string(fs.size()) + " fillings"};
  }
  return {true, "counts n! for n ≤ 6"};
}

Outcome fillings_margins() {
  long long total = 0;
  for (int n = 1; n <= 5; ++n)
    for (const auto& m : compositions(n))
      for (const auto& nn : compositions(n)) {
        const Margins margins(m, nn);
        const auto fs = enumerate_fillings(margins);
        for (std::size_t k = 0; k < fs.size(); ++k) {
          const auto& f = fs[k];
          for (std::size_t i = 0; i < f.s(); ++i) {
            int sum = 0;
            for (std::size_t j = 0; j < f.t(); ++j) sum += f(i, j);
            if (sum != m[i]) return {false, "row sum violated"};
          }
          for (std::size_t j = 0; j < f.t(); ++j) {
            int sum = 0;
            for (std::size_t i = 0; i < f.s(); ++i) sum += f(i, j);
            if (sum != nn[j]) return {false, "column sum violated"};
          }
          if (k > 0 && !(fs[k - 1].entries() < f.entries())) return {false, "order not strictly ascending"};
        }
        total += static_cast<long long>(fs.size());
      }
  return {true, std::to_string(total) + " fillings over all margins, n ≤ 5"};
}

Outcome index_is_inversion_stat() {
  std::vector<int> perm{1, 2, 3, 4};
  const std::vector<int> ones(4, 1);
  const Margins margins(ones, ones);
  do {
    const SignedPermutation sp(std::vector<int>(4, 1), perm);
    if (filling_index(filling_of_spm(sp, margins)) != inversion_stat(perm))
      return {false, "mismatch for some σ ∈ S_4"};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {true, "all 24 permutations"};
}

Outcome grassmannian_partition() {
  for (int n = 1; n <= 12; ++n) {
    const auto table = grassmannian_betti_table(n);
    IntPolynomial sum;
    for (int k = 0; k <= n; ++k) sum += IntPolynomial(table[k]).shifted(static_cast<int>(binomial2(k)));
    if (!(sum == group_poincare_c(n))) return {false, "n=" + std::to_string(n)};
  }
  return {true, "n ≤ 12"};
}

Outcome betti_recursions() {
  for (int n = 2; n <= 12; ++n) {
    const IntPolynomial b = so_poincare_enumerated(n), bp = so_poincare_enumerated(n - 1);
    const IntPolynomial c = group_poincare_c(n), cp = group_poincare_c(n - 1);
    for (int i = 0; i <= static_cast<int>(binomial2(n)) + 1; ++i) {
      const BigInt b_rhs = bp.coefficient(i) + bp.coefficient(i + 1 - n);
      const BigInt c_rhs = cp.coefficient(i) + cp.coefficient(i + 1 - n);
      if (b.coefficient(i) != b_rhs) return {false, "b recursion fails at n=" + std::to_string(n)};
      if (c.coefficient(i) != c_rhs) return {false, "c recursion fails at n=" + std::to_string(n)};
    }
    if (!(b == poincare_so(n))) return {false, "enumerated and recursive p_n differ"};
  }
  return {true, "n ≤ 12, all degrees"};
}

Outcome morse_domination() {
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    const std::vector<int> ones(n, 1);
    const Margins margins(ones, ones);
    IntPolynomial counting;
    do {
      const SignedPermutation sp(ones, perm);
      counting += IntPolynomial::monomial(static_cast<int>(filling_index(filling_of_spm(sp, margins))),
                                          BigInt(1) << n);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const IntPolynomial two_pn = poincare_so(n) + poincare_so(n);
    if (!counting.dominates(two_pn)) return {false, "fails at n=" + std::to_string(n)};
  }
  return {true, "n ≤ 5"};
}

Outcome frankel_both() {
  for (int n = 1; n <= 12; ++n)
    for (auto conv : {IotaConvention::KChoose2, IotaConvention::ComplementChoose2})
      if (!frankel_report(n, conv).all_equal) return {false, "n=" + std::to_string(n)};
  return {true, "n ≤ 12, both conventions"};
}

// ---- quadratic-trace ----

Outcome quad_gradient_tangent(std::mt19937_64& rng) {
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 5;
    const QuadraticProblem prob = random_problem(n, rng);
    const OrthogonalPoint x = haar_orthogonal(n, rng, false);
    if (!is_tangent(x, f_gradient(prob, x), 1e-12)) return {false, "gradient not tangent"};
  }
  return {true, "1000 points, n = 2..6"};
}

Outcome quad_gradient_fd(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const QuadraticProblem prob = random_problem(n, rng);
      const OrthogonalPoint x = haar_orthogonal(n, rng, false);
      const Matrix g = f_gradient(prob, x);
      for (auto idx : skew_indices(n)) {
        const Matrix e = skew_basis(idx, n);
        const double h = 1e-5;
        const double fd = (f_value(prob, along(x, e, h)) - f_value(prob, along(x, e, -h))) / (2 * h);
        const double an = frobenius_dot(g, x.mat() * e);
        worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1.0));
      }
    }
  return ok_if(worst <= 1e-6, "max relative error " + fmt(worst));
}

Outcome construct_is_critical(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const QuadraticProblem prob = random_problem(1 + trial % 5, rng);
    const OrthogonalPoint x = construct_critical(prob, random_decomposition(prob, rng));
    const Matrix s = prob.a() * x.mat() * prob.b() * x.mat().transpose();
    worst = std::max(worst, asymmetry(s));
  }
  return ok_if(worst <= 1e-10, "max asymmetry " + fmt(worst));
}

Outcome round_trips(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const QuadraticProblem prob = random_problem(1 + trial % 5, rng);
    const CriticalDecomposition dec = random_decomposition(prob, rng);
    const OrthogonalPoint x = construct_critical(prob, dec);
    const CriticalDecomposition back = decompose_critical(prob, x, 1e-8);
    if (!(back.filling == dec.filling)) return {false, "filling not recovered"};
    worst = std::max(worst, max_abs_diff(construct_critical(prob, back).mat(), x.mat()));
  }
  return ok_if(worst <= 1e-8, "max reconstruction error " + fmt(worst));
}

Outcome spm_index_nullity() {
  long long checked = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto sps = all_signed_permutations(n);
    for (const auto& ma : compositions(n))
      for (const auto& mb : compositions(n)) {
        std::vector<double> va(ma.size()), vb(mb.size());
        std::iota(va.begin(), va.end(), 1.0);
        std::iota(vb.begin(), vb.end(), 1.0);
        const QuadraticProblem prob(Spectrum(va, ma), Spectrum(vb, mb));
        for (const auto& sp : sps) {
          const PerfectFilling eps = filling_of_spm(sp, prob.margins());
          const IndexNullity got = index_nullity(hessian_form_quadratic(prob, spm_matrix(sp)));
          if (got.index != filling_index(eps) || got.nullity != component_dimension(eps))
            return {false, "mismatch at n=" + std::to_string(n)};
          ++checked;
        }
      }
  }
  return {true, std::to_string(checked) + " (margins, SPM) pairs, n ≤ 4"};
}

Outcome bott_agreement(std::mt19937_64& rng) {
  int tangent_true = 0, generic_false = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 4;
    const QuadraticProblem prob = random_problem(n, rng);
    const CriticalDecomposition dec = random_decomposition(prob, rng);
    const OrthogonalPoint x = construct_critical(prob, dec);
    Matrix m;
    const bool along_component = trial % 2 == 0;
    if (along_component)
      m = critical_direction(prob, dec, random_skews(prob.margins().m, rng), random_skews(prob.margins().n, rng));
    else
      m = x.mat() * random_skew(n, rng);
    const auto crit = tangent_criteria_bott(prob, x, m, 1e-8);
    if (!std::all_of(crit.begin(), crit.end(), [&](bool b) { return b == crit[0]; }))
      return {false, "criteria disagree at trial " + std::to_string(trial)};
    if (along_component && !crit[0]) return {false, "component direction rejected"};
    if (along_component) ++tangent_true;
    if (!along_component && !crit[0]) ++generic_false;
  }
  return {true, std::to_string(tangent_true) + " component directions accepted, " +
                    std::to_string(generic_false) + " generic directions rejected"};
}

Outcome hessian_symmetry(std::mt19937_64& rng) {
  double crit_defect = 0.0, remark = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const QuadraticProblem prob = random_problem(n, rng);
    const OrthogonalPoint xc = construct_critical(prob, random_decomposition(prob, rng));
    crit_defect = std::max(crit_defect, hessian_form_quadratic(prob, xc).asymmetry_defect);
    const OrthogonalPoint x = haar_orthogonal(n, rng, false);
    const Matrix e = random_skew(n, rng), nn = random_skew(n, rng);
    const double lhs = hessian_bilinear_quadratic(prob, x, e, nn) - hessian_bilinear_quadratic(prob, x, nn, e);
    const Matrix m = x.mat() * commutator(e, nn);
    const double df = (prob.a() * m * prob.b() * x.mat().transpose() +
                       prob.a() * x.mat() * prob.b() * m.transpose()).trace();
    remark = std::max(remark, std::abs(lhs - df) / std::max(1.0, prob.magnitude()));
  }
  return ok_if(crit_defect <= 1e-9 && remark <= 1e-8,
               "critical defect " + fmt(crit_defect) + ", non-critical identity error " + fmt(remark));
}

// ---- linear-trace ----

Outcome linear_gradient_tangent(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    Matrix a(n, n);
    for (double& v : a.entries()) v = normal(rng);
    const OrthogonalPoint x = haar_orthogonal(n, rng, false);
    if (!is_tangent(x, linear_gradient(LinearProblem(a), x), 1e-12)) return {false, "gradient not tangent"};
  }
  return {true, "1000 points, n = 2..6"};
}

GrassmannPoint random_subspace(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  return GrassmannPoint::certify(haar_orthogonal(n, rng, false).mat().columns(0, k));
}

Outcome linear_kernel_dimension(std::mt19937_64& rng) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t k = 0; k <= n; ++k)
      for (int trial = 0; trial < 5; ++trial) {
        const OrthogonalPoint x = critical_of_subspace(random_subspace(n, k, rng));
        const IndexNullity in = index_nullity(hessian_form_linear(LinearProblem(Matrix::identity(n)), x));
        if (in.nullity != static_cast<long long>(k * (n - k)) ||
            in.index != binomial2(static_cast<long long>(n - k)))
          return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k)};
      }
  return {true, "nullity k(n−k) and index C(n−k,2), n ≤ 5"};
}

Outcome linear_index_standard() {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<double> d(n, 1.0);
      for (std::size_t i = 0; i < k; ++i) d[i] = -1.0;
      const OrthogonalPoint x = OrthogonalPoint::certify(Matrix::diagonal(d), 0.0);
      const IndexNullity in = index_nullity(hessian_form_linear(LinearProblem(Matrix::identity(n)), x));
      if (in.index != binomial2(static_cast<long long>(n - k)))
        return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k)};
    }
  return {true, "n ≤ 6, all k"};
}

Outcome subspace_basis_invariance(std::mt19937_64& rng) {
  double worst = 0.0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      const GrassmannPoint l = random_subspace(n, k, rng);
      const Matrix rotated = l.basis() * haar_orthogonal(k, rng, false).mat();
      const OrthogonalPoint x1 = critical_of_subspace(l);
      const OrthogonalPoint x2 = critical_of_subspace(GrassmannPoint::certify(rotated));
      worst = std::max(worst, max_abs_diff(x1.mat(), x2.mat()));
    }
  return ok_if(worst <= 1e-12, "max difference " + fmt(worst));
}

Outcome linear_morse_generic(std::mt19937_64& rng) {
  FlowParams params;
  int reached = 0;
  for (std::size_t n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> sv(n);
      for (std::size_t i = 0; i < n; ++i) sv[i] = 1.0 + static_cast<double>(i);
      const Matrix a = haar_orthogonal(n, rng, false).mat() * Matrix::diagonal(sv) *
                       haar_orthogonal(n, rng, false).mat().transpose();
      const LinearProblem prob(a);
      const Trajectory tr = flow(linear_objective(prob), haar_orthogonal(n, rng, false), params,
                                 trial % 2 ? Direction::Forward : Direction::Backward);
      if (!tr.converged) return {false, "flow did not converge"};
      if (!is_critical_linear(prob, *tr.limit, 1e-8)) return {false, "limit not critical"};
      if (index_nullity(hessian_form_linear(prob, *tr.limit)).nullity != 0)
        return {false, "degenerate critical point for distinct singular values"};
      ++reached;
    }
  return {true, std::to_string(reached) + " limits with nullity 0"};
}

// ---- flow ----

struct FnnStats {
  double closed_form = 0.0;
  double drift = 0.0;
  bool monotone = true;
  bool critical = true;
  bool converged = true;
};

bool monotone(const Trajectory& tr, Direction dir) {
  const double sign = dir == Direction::Forward ? 1.0 : -1.0;
  for (std::size_t k = 1; k < tr.values.size(); ++k)
    if (sign * (tr.values[k] - tr.values[k - 1]) < -1e-12 * std::max(1.0, std::abs(tr.values[k - 1])))
      return false;
  return true;
}

void absorb(FnnStats& st, const Trajectory& tr, Direction dir, const FlowParams& params) {
  st.converged = st.converged && tr.converged;
  st.monotone = st.monotone && monotone(tr, dir);
  if (tr.converged) st.critical = st.critical && tr.final_grad <= params.grad_tol;
  for (const auto& p : tr.points) st.drift = std::max(st.drift, p.residual());
}

FnnStats fnn_flows(std::mt19937_64& rng) {
  FnnStats st;
  FlowParams params;
  for (std::size_t n = 3; n <= 6; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      const OrthogonalPoint y = sample_level_set(n, rng);
      const Objective obj = fnn_objective(n);
      const Trajectory fwd = flow(obj, y, params, Direction::Forward);
      const Trajectory bwd = flow(obj, y, params, Direction::Backward);
      absorb(st, fwd, Direction::Forward, params);
      absorb(st, bwd, Direction::Backward, params);
      if (!fwd.converged || !bwd.converged) continue;
      st.closed_form = std::max(st.closed_form, max_abs_diff(identify_max_component(fwd.limit->mat()), fnn_target(y)));
      st.closed_form = std::max(st.closed_form, max_abs_diff(identify_min_component(bwd.limit->mat()), fnn_source(y)));
    }
  return st;
}

Outcome quad_flow_index(std::mt19937_64& rng, FnnStats& st) {
  FlowParams params;
  int matched = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const QuadraticProblem prob = distinct_problem(n);
    const std::vector<int> ones(n, 1);
    for (int trial = 0; trial < 34; ++trial) {
      const Direction dir = trial % 2 ? Direction::Forward : Direction::Backward;
      const Trajectory tr = flow(quadratic_objective(prob), haar_orthogonal(n, rng, false), params, dir);
      absorb(st, tr, dir, params);
      if (!tr.converged) return {false, "flow did not converge"};
      const auto sp = nearest_signed_permutation(tr.limit->mat(), 1e-6);
      if (!sp) return {false, "limit is not a signed permutation matrix"};
      const PerfectFilling eps = decompose_critical(prob, *tr.limit, 1e-6).filling;
      if (index_nullity(hessian_form_quadratic(prob, *tr.limit)).index != filling_index(eps))
        return {false, "index differs from filling index"};
      ++matched;
    }
  }
  return {true, std::to_string(matched) + " limits, n = 2..4"};
}

Outcome prop_main_samples(std::mt19937_64& rng) {
  double worst = 0.0;
  for (std::size_t n = 4; n <= 6; ++n)
    for (int trial = 0; trial < 1000; ++trial) worst = std::max(worst, prop_main_deviation(sample_level_set(n, rng)));
  return ok_if(worst <= 1e-9, "3000 samples, max deviation " + fmt(worst));
}

}  // namespace

std::vector<PropertyResult> run_verify(const VerifyOptions& options) {
  std::vector<PropertyResult> results;
  std::mt19937_64 rng(options.seed);
  auto run = [&](const std::string& module, const std::string& name, auto&& body) {
    if (!options.module.empty() && options.module != module) return;
    PropertyResult r{module, name, false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [pass, detail] = body();
      r.passed = pass;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  };

  run("matrix-core", "standard basis is skew and independent", skew_basis_independent);
  run("matrix-core", "E(p,q) F(u,v) commutator table", commutator_cases);
  run("matrix-core", "permutation conjugation of D and F", permutation_conjugation);
  run("matrix-core", "signed permutation matrices exactly orthogonal", spm_exact);
  run("matrix-core", "X E tangent at X", [&] { return tangent_translates(rng); });

  run("combinatorics", "all-ones margins give n! fillings", fillings_permutations);
  run("combinatorics", "fillings satisfy margins in ascending order", fillings_margins);
  run("combinatorics", "filling index equals order-preserving pair count", index_is_inversion_stat);
  run("combinatorics", "Grassmannian counts partition the O(n) counts", grassmannian_partition);
  run("combinatorics", "Betti recursions", betti_recursions);
  run("combinatorics", "Morse counting polynomial dominates 2 p_n", morse_domination);
  run("combinatorics", "Frankel identity", frankel_both);

  run("quadratic-trace", "gradient is tangent", [&] { return quad_gradient_tangent(rng); });
  run("quadratic-trace", "gradient matches finite differences", [&] { return quad_gradient_fd(rng); });
  run("quadratic-trace", "constructed points are critical", [&] { return construct_is_critical(rng); });
  run("quadratic-trace", "construct/decompose round trip", [&] { return round_trips(rng); });
  run("quadratic-trace", "index and nullity at signed permutations", spm_index_nullity);
  run("quadratic-trace", "tangent criteria agree", [&] { return bott_agreement(rng); });
  run("quadratic-trace", "Hessian symmetry and its defect", [&] { return hessian_symmetry(rng); });

  run("linear-trace", "gradient is tangent", [&] { return linear_gradient_tangent(rng); });
  run("linear-trace", "kernel dimension k(n-k) at critical points", [&] { return linear_kernel_dimension(rng); });
  run("linear-trace", "index C(n-k,2) at -I_k + I_(n-k)", linear_index_standard);
  run("linear-trace", "critical point independent of subspace basis", [&] { return subspace_basis_invariance(rng); });
  run("linear-trace", "distinct singular values give nondegenerate limits", [&] { return linear_morse_generic(rng); });

  if (options.module.empty() || options.module == "flow") {
    FnnStats st;
    const auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
      st = fnn_flows(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double fnn_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back({"flow", "closed-form source and target match flow limits",
                       failure.empty() && st.converged && st.closed_form <= 1e-5,
                       failure.empty() ? "200 starts, max deviation " + fmt(st.closed_form) : failure, fnn_seconds});
    run("flow", "quadratic limits have index equal to filling index", [&] { return quad_flow_index(rng, st); });
    results.push_back({"flow", "trajectories are monotone", st.monotone, "", 0.0});
    results.push_back({"flow", "converged limits are critical", st.critical, "", 0.0});
    results.push_back({"flow", "orthogonality drift below 1e-8", st.drift <= 1e-8, "max residual " + fmt(st.drift), 0.0});
    run("flow", "source times inverse target is r(pi)", [&] { return prop_main_samples(rng); });
  }
  return results;
}

}  // namespace orthomorse
