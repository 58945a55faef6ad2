#include "orthomorse/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "orthomorse/errors.hpp"

namespace orthomorse {

Objective quadratic_objective(QuadraticProblem prob) {
  Objective o;
  o.name = "quad";
  o.value = [prob](const OrthogonalPoint& x) { return f_value(prob, x); };
  o.gradient = [prob](const OrthogonalPoint& x) { return f_gradient(prob, x); };
  return o;
}

Objective linear_objective(LinearProblem prob) {
  Objective o;
  o.name = "trace";
  o.value = [prob](const OrthogonalPoint& x) { return linear_value(prob, x); };
  o.gradient = [prob](const OrthogonalPoint& x) { return linear_gradient(prob, x); };
  return o;
}

Objective fnn_objective(std::size_t n) {
  if (n < 2) throw std::invalid_argument("fnn_objective requires n >= 2");
  Objective o;
  o.name = "nn";
  o.value = [n](const OrthogonalPoint& x) {
    if (x.n() != n) throw std::invalid_argument("fnn objective: size mismatch");
    return x(n - 1, n - 1);
  };
  o.gradient = [n](const OrthogonalPoint& x) {
    if (x.n() != n) throw std::invalid_argument("fnn objective: size mismatch");
    return fnn_gradient(x);
  };
  return o;
}

void FlowParams::validate() const {
  if (!(step > 0.0) || !(grad_tol > 0.0) || max_steps <= 0 || reproject_every <= 0 ||
      record_every <= 0)
    throw std::invalid_argument("flow parameters must all be positive");
}

Trajectory flow(const Objective& objective, const OrthogonalPoint& x0, const FlowParams& params,
                Direction direction) {
  params.validate();
  const double sign = direction == Direction::Forward ? 1.0 : -1.0;
  Trajectory traj;
  OrthogonalPoint x = OrthogonalPoint::certify(x0.mat());
  double f = objective.value(x);
  Matrix g = objective.gradient(x);
  traj.points.push_back(x);
  traj.values.push_back(f);

  double h = params.step;
  int successes = 0;
  bool stalled = false;
  while (true) {
    traj.final_grad = max_abs(g);
    if (traj.final_grad <= params.grad_tol) {
      traj.converged = true;
      break;
    }
    if (traj.steps >= params.max_steps || stalled) break;
    const Matrix generator = skew_part(x.mat().transpose() * g);
    Matrix next;
    double fnext = 0.0;
    while (true) {
      next = x.mat() * expm((sign * h) * generator);
      fnext = objective.value(OrthogonalPoint::certify(next));
      if (sign * (fnext - f) >= -1e-12 * std::max(1.0, std::abs(f))) break;
      h *= 0.5;
      successes = 0;
      if (h < 1e-14 * params.step) {
        stalled = true;
        break;
      }
    }
    if (stalled) break;
    ++traj.steps;
    if (++successes >= 10 && h < params.step) {
      h = std::min(params.step, 2.0 * h);
      successes = 0;
    }
    if (traj.steps % params.reproject_every == 0) {
      x = project_orthogonal(next);
      f = objective.value(x);
    } else {
      x = OrthogonalPoint::certify(std::move(next));
      f = fnext;
    }
    g = objective.gradient(x);
    if (traj.steps % params.record_every == 0) {
      traj.points.push_back(x);
      traj.values.push_back(f);
    }
  }
  if (traj.steps % params.record_every != 0) {
    traj.points.push_back(x);
    traj.values.push_back(f);
  }
  if (traj.converged) traj.limit = x;
  return traj;
}

Matrix fnn_gradient(const OrthogonalPoint& x) {
  const std::size_t n = x.n();
  if (n < 2) throw std::invalid_argument("fnn_gradient requires n >= 2");
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = -0.5 * x(i, n - 1) * x(n - 1, j);
  g(n - 1, n - 1) += 0.5;
  return g;
}

namespace {

constexpr double kLevelTol = 1e-9;

void require_level_set(const OrthogonalPoint& x, const char* what) {
  if (x.n() < 3) throw std::invalid_argument(std::string(what) + " requires n >= 3");
  const double xnn = x(x.n() - 1, x.n() - 1);
  if (!(std::abs(xnn) <= kLevelTol))
    throw std::invalid_argument(std::string(what) + ": X_nn = " + format_magnitude(xnn) +
                                " is not on the level set");
}

// g ∈ SO(m) with first column w (unit), from a Householder reflection that
// maps e_1 to ±w followed by a column negation restoring det +1.
Matrix rotation_with_first_column(const std::vector<double>& w) {
  const std::size_t m = w.size();
  std::vector<double> u = w;
  const bool negative = w[0] < 0.0;
  u[0] += negative ? -1.0 : 1.0;
  double uu = 0.0;
  for (double v : u) uu += v * v;
  Matrix g = Matrix::identity(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) -= 2.0 * u[i] * u[j] / uu;
  // negative: g e_1 = w, flip column 2; otherwise g e_1 = −w, flip column 1.
  const std::size_t flip = negative ? 1 : 0;
  for (std::size_t i = 0; i < m; ++i) g(i, flip) = -g(i, flip);
  return g;
}

struct LevelSetFrame {
  Matrix rotation;  // g ∈ SO(n−1) with g e_1 = π(X)
  Matrix core;      // [−v; V]
};

LevelSetFrame frame(const OrthogonalPoint& y) {
  const std::size_t n = y.n();
  std::vector<double> w = level_set_direction(y);
  double norm = 0.0;
  for (double v : w) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : w) v /= norm;
  LevelSetFrame fr;
  fr.rotation = rotation_with_first_column(w);
  const Matrix x = direct_sum(fr.rotation.transpose(), Matrix::identity(1)) * y.mat();
  fr.core = Matrix(n - 1, n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) fr.core(0, j) = -y(n - 1, j);
  for (std::size_t i = 1; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) fr.core(i, j) = x(i, j);
  return fr;
}

Matrix reflection_j(std::size_t m) {
  Matrix j = Matrix::identity(m);
  if (m > 0) j(0, 0) = -1.0;
  return j;
}

}  // namespace

std::vector<double> level_set_direction(const OrthogonalPoint& x) {
  const std::size_t n = x.n();
  if (n < 2) throw std::invalid_argument("level_set_direction requires n >= 2");
  std::vector<double> w(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) w[i] = x(i, n - 1);
  return w;
}

Matrix fnn_source(const OrthogonalPoint& x) {
  require_level_set(x, "fnn_source");
  const LevelSetFrame fr = frame(x);
  const Matrix j = reflection_j(x.n() - 1);
  return j * fr.rotation * j * fr.core;
}

Matrix fnn_target(const OrthogonalPoint& x) {
  require_level_set(x, "fnn_target");
  const LevelSetFrame fr = frame(x);
  return fr.rotation * fr.core;
}

Matrix identify_min_component(const Matrix& z) {
  require_square(z, "identify_min_component");
  if (z.rows() < 2) throw std::invalid_argument("identify_min_component requires n >= 2");
  const std::size_t m = z.rows() - 1;
  return reflection_j(m) * z.block(0, 0, m, m);
}

Matrix identify_max_component(const Matrix& z) {
  require_square(z, "identify_max_component");
  if (z.rows() < 2) throw std::invalid_argument("identify_max_component requires n >= 2");
  const std::size_t m = z.rows() - 1;
  return z.block(0, 0, m, m);
}

Matrix reflection_r(std::span<const double> w) {
  double ww = 0.0;
  for (double v : w) ww += v * v;
  if (!(ww > 0.0)) throw std::invalid_argument("reflection_r: zero vector");
  const std::size_t m = w.size();
  Matrix rho = Matrix::identity(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) rho(i, k) -= 2.0 * w[i] * w[k] / ww;
  return reflection_j(m) * rho;
}

double prop_main_deviation(const OrthogonalPoint& x, std::span<const double> w) {
  const Matrix s = fnn_source(x);
  const Matrix t = fnn_target(x);
  if (w.size() != x.n() - 1) throw std::invalid_argument("prop_main_deviation: w has wrong length");
  return max_abs_diff(s * t.transpose(), reflection_r(w));
}

double prop_main_deviation(const OrthogonalPoint& x) {
  const auto w = level_set_direction(x);
  return prop_main_deviation(x, w);
}

bool check_prop_main(const OrthogonalPoint& x, double tol) { return prop_main_deviation(x) <= tol; }

OrthogonalPoint sample_level_set(std::size_t n, std::mt19937_64& rng) {
  if (n < 3) throw std::invalid_argument("sample_level_set requires n >= 3");
  Matrix x = haar_orthogonal(n, rng, true).mat();
  const double theta = std::atan2(x(n - 1, n - 1), x(0, n - 1));
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t j = 0; j < n; ++j) {
    const double top = x(0, j), bottom = x(n - 1, j);
    x(0, j) = c * top + s * bottom;
    x(n - 1, j) = -s * top + c * bottom;
  }
  x(n - 1, n - 1) = 0.0;  // the rotation zeroes this entry up to roundoff
  return OrthogonalPoint::certify(std::move(x), 1e-12);
}

}  // namespace orthomorse
