#include "orthomorse/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "orthomorse/errors.hpp"
#include "orthomorse/linalg.hpp"

namespace orthomorse {

Spectrum::Spectrum(std::vector<double> v, std::vector<int> m) : values(std::move(v)), mults(std::move(m)) {
  if (values.empty()) throw std::invalid_argument("spectrum must be nonempty");
  if (values.size() != mults.size())
    throw std::invalid_argument("spectrum values and mults differ in length");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j])) throw std::invalid_argument("spectrum value is not finite");
    if (mults[j] <= 0) throw std::invalid_argument("spectrum multiplicities must be positive");
    if (j > 0 && !(values[j] > values[j - 1]))
      throw std::invalid_argument("spectrum values must be strictly increasing");
  }
}

int Spectrum::total() const { return std::accumulate(mults.begin(), mults.end(), 0); }

std::vector<double> Spectrum::diagonal() const {
  std::vector<double> d;
  for (std::size_t j = 0; j < values.size(); ++j) d.insert(d.end(), mults[j], values[j]);
  return d;
}

double Spectrum::min_gap() const {
  double gap = 0.0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    const double g = values[j] - values[j - 1];
    gap = j == 1 ? g : std::min(gap, g);
  }
  return gap;
}

double Spectrum::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

QuadraticProblem::QuadraticProblem(Spectrum a, Spectrum b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.total() != b_.total())
    throw std::invalid_argument("spectra of A and B have different total multiplicity");
  const auto da = a_.diagonal();
  const auto db = b_.diagonal();
  a_mat_ = Matrix::diagonal(da);
  b_mat_ = Matrix::diagonal(db);
}

std::vector<std::size_t> block_offsets(const std::vector<int>& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + static_cast<std::size_t>(sizes[i]);
  return off;
}

namespace {

void require_size(const QuadraticProblem& prob, const Matrix& x, const char* what) {
  if (x.rows() != prob.n() || x.cols() != prob.n())
    throw std::invalid_argument(std::string(what) + ": point has size " + std::to_string(x.rows()) +
                                "x" + std::to_string(x.cols()) + ", problem has n=" +
                                std::to_string(prob.n()));
}

Matrix axbxt(const QuadraticProblem& prob, const Matrix& x) {
  return prob.a() * (x * prob.b() * x.transpose());
}

// q[i][j]: first column of Q[i,j] inside Q[i]; r[i][j]: of R[i,j] inside R[j].
struct FillingColumns {
  std::vector<std::vector<std::size_t>> q, r;
  explicit FillingColumns(const PerfectFilling& eps)
      : q(eps.s(), std::vector<std::size_t>(eps.t(), 0)),
        r(eps.s(), std::vector<std::size_t>(eps.t(), 0)) {
    for (std::size_t i = 0; i < eps.s(); ++i)
      for (std::size_t j = 1; j < eps.t(); ++j) q[i][j] = q[i][j - 1] + eps(i, j - 1);
    for (std::size_t j = 0; j < eps.t(); ++j)
      for (std::size_t i = 1; i < eps.s(); ++i) r[i][j] = r[i - 1][j] + eps(i - 1, j);
  }
};

}  // namespace

double f_value(const QuadraticProblem& prob, const OrthogonalPoint& x) {
  require_size(prob, x.mat(), "f_value");
  return axbxt(prob, x.mat()).trace();
}

Matrix f_gradient(const QuadraticProblem& prob, const OrthogonalPoint& x) {
  require_size(prob, x.mat(), "f_gradient");
  const Matrix h = x.mat() * prob.b() * x.mat().transpose();
  return (prob.a() * h - h * prob.a()) * x.mat();
}

bool is_critical_quadratic(const QuadraticProblem& prob, const OrthogonalPoint& x, double tol) {
  require_size(prob, x.mat(), "is_critical_quadratic");
  return asymmetry(axbxt(prob, x.mat())) <= tol;
}

OrthogonalPoint construct_critical(const QuadraticProblem& prob, const CriticalDecomposition& dec) {
  const Margins margins = prob.margins();
  const PerfectFilling& eps = dec.filling;
  if (!(eps.margins() == margins))
    throw std::invalid_argument("construct_critical: filling margins differ from the spectra");
  const std::size_t s = margins.s(), t = margins.t();
  if (dec.q.size() != s || dec.r.size() != t)
    throw std::invalid_argument("construct_critical: wrong number of Q or R blocks");
  for (std::size_t i = 0; i < s; ++i) {
    if (dec.q[i].rows() != static_cast<std::size_t>(margins.m[i]) || !dec.q[i].square())
      throw std::invalid_argument("construct_critical: Q[" + std::to_string(i + 1) + "] has wrong size");
    OrthogonalPoint::certify(dec.q[i]);
  }
  for (std::size_t j = 0; j < t; ++j) {
    if (dec.r[j].rows() != static_cast<std::size_t>(margins.n[j]) || !dec.r[j].square())
      throw std::invalid_argument("construct_critical: R[" + std::to_string(j + 1) + "] has wrong size");
    OrthogonalPoint::certify(dec.r[j]);
  }
  const auto row_off = block_offsets(margins.m);
  const auto col_off = block_offsets(margins.n);
  const FillingColumns cols(eps);
  Matrix x(prob.n(), prob.n());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      const std::size_t e = eps(i, j);
      if (e == 0) continue;
      const Matrix qij = dec.q[i].columns(cols.q[i][j], e);
      const Matrix rij = dec.r[j].columns(cols.r[i][j], e);
      x.set_block(row_off[i], col_off[j], qij * rij.transpose());
    }
  return OrthogonalPoint::certify(std::move(x));
}

Matrix critical_direction(const QuadraticProblem& prob, const CriticalDecomposition& dec,
                          const std::vector<Matrix>& q_skew, const std::vector<Matrix>& r_skew) {
  const Margins margins = prob.margins();
  const PerfectFilling& eps = dec.filling;
  const std::size_t s = margins.s(), t = margins.t();
  if (!(eps.margins() == margins) || dec.q.size() != s || dec.r.size() != t ||
      q_skew.size() != s || r_skew.size() != t)
    throw std::invalid_argument("critical_direction: block structure mismatch");
  std::vector<Matrix> mq, nr;
  for (std::size_t i = 0; i < s; ++i) {
    require_same_shape(dec.q[i], q_skew[i], "critical_direction");
    mq.push_back(dec.q[i] * q_skew[i]);
  }
  for (std::size_t j = 0; j < t; ++j) {
    require_same_shape(dec.r[j], r_skew[j], "critical_direction");
    nr.push_back(dec.r[j] * r_skew[j]);
  }
  const auto row_off = block_offsets(margins.m);
  const auto col_off = block_offsets(margins.n);
  const FillingColumns cols(eps);
  Matrix d(prob.n(), prob.n());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      const std::size_t e = eps(i, j);
      if (e == 0) continue;
      const Matrix qij = dec.q[i].columns(cols.q[i][j], e);
      const Matrix rij = dec.r[j].columns(cols.r[i][j], e);
      const Matrix mij = mq[i].columns(cols.q[i][j], e);
      const Matrix nij = nr[j].columns(cols.r[i][j], e);
      d.set_block(row_off[i], col_off[j], mij * rij.transpose() + qij * nij.transpose());
    }
  return d;
}

CriticalDecomposition decompose_critical(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                         double tol) {
  require_size(prob, x.mat(), "decompose_critical");
  const double defect = asymmetry(axbxt(prob, x.mat()));
  if (!(defect <= tol))
    throw numerical_error("decompose_critical: point is not critical (asymmetry " +
                          format_magnitude(defect) + " exceeds " + format_magnitude(tol) + ")");
  const Margins margins = prob.margins();
  const std::size_t s = margins.s(), t = margins.t();
  const auto& bvals = prob.spec_b().values;
  const double radius = t > 1 ? prob.spec_b().min_gap() / 4.0
                              : 1e-6 * std::max(1.0, std::abs(bvals.front()));
  const auto row_off = block_offsets(margins.m);
  const auto col_off = block_offsets(margins.n);
  const Matrix h = x.mat() * prob.b() * x.mat().transpose();

  std::vector<int> eps(s * t, 0);
  std::vector<std::vector<Matrix>> qij(s, std::vector<Matrix>(t));
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t mi = margins.m[i];
    const SymmetricEigen eig = symmetric_eigen(h.block(row_off[i], row_off[i], mi, mi));
    std::vector<std::vector<std::size_t>> cluster(t);
    for (std::size_t k = 0; k < mi; ++k) {
      const double lambda = eig.values[k];
      std::size_t best = t;
      for (std::size_t j = 0; j < t; ++j)
        if (std::abs(lambda - bvals[j]) < radius) best = j;
      if (best == t)
        throw numerical_error("decompose_critical: eigenvalue " + format_magnitude(lambda) +
                              " of block " + std::to_string(i + 1) + " matches no value of B");
      cluster[best].push_back(k);
    }
    for (std::size_t j = 0; j < t; ++j) {
      eps[i * t + j] = static_cast<int>(cluster[j].size());
      Matrix basis(mi, cluster[j].size());
      for (std::size_t c = 0; c < cluster[j].size(); ++c)
        for (std::size_t r = 0; r < mi; ++r) basis(r, c) = eig.vectors(r, cluster[j][c]);
      qij[i][j] = orthonormalize_columns(basis);
    }
  }

  CriticalDecomposition dec;
  try {
    dec.filling = PerfectFilling(margins, eps);
  } catch (const std::invalid_argument& e) {
    throw numerical_error(std::string("decompose_critical: eigenspace dimensions do not form a filling: ") +
                          e.what());
  }
  for (std::size_t i = 0; i < s; ++i) {
    Matrix qi(margins.m[i], margins.m[i]);
    std::size_t c = 0;
    for (std::size_t j = 0; j < t; ++j) {
      qi.set_block(0, c, qij[i][j]);
      c += qij[i][j].cols();
    }
    dec.q.push_back(std::move(qi));
  }
  for (std::size_t j = 0; j < t; ++j) {
    Matrix rj(margins.n[j], margins.n[j]);
    std::size_t c = 0;
    for (std::size_t i = 0; i < s; ++i) {
      const Matrix xij = x.mat().block(row_off[i], col_off[j], margins.m[i], margins.n[j]);
      const Matrix rij = xij.transpose() * qij[i][j];
      rj.set_block(0, c, rij);
      c += rij.cols();
    }
    if (ortho_residual(rj) > kDefaultOrthoTol)
      throw numerical_error("decompose_critical: recovered R[" + std::to_string(j + 1) +
                            "] is not orthogonal");
    dec.r.push_back(std::move(rj));
  }
  return dec;
}

double hessian_bilinear_quadratic(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                  const Matrix& e, const Matrix& nn) {
  require_size(prob, x.mat(), "hessian_bilinear_quadratic");
  require_same_shape(x.mat(), e, "hessian_bilinear_quadratic");
  require_same_shape(x.mat(), nn, "hessian_bilinear_quadratic");
  const Matrix inner = commutator(e, commutator(nn, prob.b()));
  return (prob.a() * x.mat() * inner * x.mat().transpose()).trace();
}

double hessian_bilinear_quadratic_expanded(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                           const Matrix& e, const Matrix& nn) {
  require_size(prob, x.mat(), "hessian_bilinear_quadratic_expanded");
  require_same_shape(x.mat(), e, "hessian_bilinear_quadratic_expanded");
  require_same_shape(x.mat(), nn, "hessian_bilinear_quadratic_expanded");
  const Matrix k = commutator(nn, prob.b());
  const Matrix ax = prob.a() * x.mat();
  const Matrix xt = x.mat().transpose();
  return (ax * e * k * xt).trace() + (ax * k * e.transpose() * xt).trace();
}

namespace {

// c = XᵀAX so that Tr(A X K Xᵀ) = Tr(c K).
template <class Entry>
QuadraticForm assemble(std::size_t n, double scale, Entry entry) {
  const auto idx = skew_indices(n);
  std::vector<Matrix> basis;
  basis.reserve(idx.size());
  for (auto i : idx) basis.push_back(skew_basis(i, n));
  const std::size_t d = idx.size();
  Matrix raw(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) raw(r, c) = entry(basis[r], basis[c]);
  QuadraticForm form;
  form.n = n;
  form.asymmetry_defect = asymmetry(raw);
  form.h = symmetric_part(raw);
  form.scale = scale;
  return form;
}

}  // namespace

QuadraticForm hessian_form_quadratic(const QuadraticProblem& prob, const OrthogonalPoint& x) {
  require_size(prob, x.mat(), "hessian_form_quadratic");
  const Matrix c = x.mat().transpose() * prob.a() * x.mat();
  return assemble(prob.n(), prob.magnitude(), [&](const Matrix& e, const Matrix& nn) {
    return trace_of_product(c, commutator(e, commutator(nn, prob.b())));
  });
}

QuadraticForm hessian_form_quadratic_expanded(const QuadraticProblem& prob,
                                              const OrthogonalPoint& x) {
  require_size(prob, x.mat(), "hessian_form_quadratic_expanded");
  return assemble(prob.n(), prob.magnitude(), [&](const Matrix& e, const Matrix& nn) {
    return hessian_bilinear_quadratic_expanded(prob, x, e, nn);
  });
}

IndexNullity index_nullity(const QuadraticForm& form, double zero_tol) {
  IndexNullity out;
  for (double lambda : symmetric_eigenvalues(form.h)) {
    if (lambda < -zero_tol)
      ++out.index;
    else if (lambda <= zero_tol)
      ++out.nullity;
  }
  return out;
}

double default_zero_tol(const QuadraticForm& form) {
  double radius = 0.0;
  for (double lambda : symmetric_eigenvalues(form.h)) radius = std::max(radius, std::abs(lambda));
  return 1e-7 * std::max(radius, form.scale);
}

IndexNullity index_nullity(const QuadraticForm& form) {
  return index_nullity(form, default_zero_tol(form));
}

std::vector<double> spm_hessian_diagonal(const QuadraticProblem& prob, const SignedPermutation& sp) {
  if (sp.n() != prob.n()) throw std::invalid_argument("spm_hessian_diagonal: size mismatch");
  std::vector<double> out;
  for (auto idx : skew_indices(prob.n())) {
    const double bp = prob.b()(idx.p - 1, idx.p - 1), bq = prob.b()(idx.q - 1, idx.q - 1);
    const int sp_ = sp.sigma(idx.p) - 1, sq = sp.sigma(idx.q) - 1;
    out.push_back(2.0 * (bp - bq) * (prob.a()(sq, sq) - prob.a()(sp_, sp_)));
  }
  return out;
}

namespace {

// Largest entry outside the diagonal blocks of the given sizes.
double off_block_residual(const Matrix& s, const std::vector<int>& sizes) {
  std::vector<std::size_t> block;
  for (std::size_t b = 0; b < sizes.size(); ++b) block.insert(block.end(), sizes[b], b);
  double r = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (block[i] != block[j]) r = std::max(r, std::abs(s(i, j)));
  return r;
}

}  // namespace

std::array<bool, 7> tangent_criteria_bott(const QuadraticProblem& prob, const OrthogonalPoint& x,
                                          const Matrix& m, double tol) {
  require_size(prob, x.mat(), "tangent_criteria_bott");
  require_same_shape(x.mat(), m, "tangent_criteria_bott");
  const double mmax = max_abs(m);
  const double scale = prob.spec_a().max_abs() * prob.spec_b().max_abs() * mmax;
  if (!is_tangent(x, m, 1e-8 * std::max(1.0, mmax)))
    throw std::invalid_argument("tangent_criteria_bott: M is not tangent at X");
  const Matrix& a = prob.a();
  const Matrix& b = prob.b();
  const Matrix& xm = x.mat();
  const Matrix xt = xm.transpose();
  const Matrix mt = m.transpose();
  const Matrix s = m * b * xt + xm * b * mt;
  const Matrix u = xt * a * m + mt * a * xm;
  const Matrix as = a * s;
  const Matrix bu = b * u;

  std::array<double, 7> res{};
  res[0] = asymmetry(as);
  res[1] = std::max(off_block_residual(s, prob.spec_a().mults), asymmetry(s));
  res[2] = max_abs_diff(as, s * a);
  res[3] = max_abs_diff(bu, u * b);
  res[4] = asymmetry(bu);
  res[5] = std::max(off_block_residual(u, prob.spec_b().mults), asymmetry(u));
  {
    const QuadraticForm form = hessian_form_quadratic(prob, x);
    const auto coords = skew_coordinates(xt * m);
    const std::size_t d = coords.size();
    double worst = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) acc += form.h(r, c) * coords[c];
      worst = std::max(worst, std::abs(acc));
    }
    res[6] = worst;
  }
  std::array<bool, 7> out{};
  for (std::size_t k = 0; k < 7; ++k) out[k] = res[k] <= tol * scale;
  return out;
}

}  // namespace orthomorse
