#pragma once

// Gradient flows on O(n) and the level-set geometry of f(X) = X_nn on SO(n).
//
// For f(X) = X_nn the critical set is F_0 = {X_nn = −1} ∐ F_{n−1} = {X_nn = 1},
// each identified with SO(n−1): Q ↦ JQ ⊕ (−1) and Q ↦ Q ⊕ 1 respectively,
// where J = Diag(−1, 1, …, 1). The level set M = {X_nn = 0} parametrizes
// flow lines; its points flow backward to F_0 (source) and forward to F_{n−1}
// (target).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "orthomorse/linear.hpp"
#include "orthomorse/matrix.hpp"
#include "orthomorse/orthogonal.hpp"
#include "orthomorse/quadratic.hpp"

namespace orthomorse {

struct Objective {
  std::string name;
  std::function<double(const OrthogonalPoint&)> value;
  std::function<Matrix(const OrthogonalPoint&)> gradient;
};

Objective quadratic_objective(QuadraticProblem prob);
Objective linear_objective(LinearProblem prob);
/// X ↦ X_nn with gradient fnn_gradient.
Objective fnn_objective(std::size_t n);

struct FlowParams {
  double step = 0.1;
  double grad_tol = 1e-10;
  long long max_steps = 1000000;
  long long reproject_every = 100;
  /// Keep every k-th point in the trajectory (the first and last are always kept).
  long long record_every = 1;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

enum class Direction { Forward, Backward };

struct Trajectory {
  std::vector<OrthogonalPoint> points;
  std::vector<double> values;
  bool converged = false;
  std::optional<OrthogonalPoint> limit;
  long long steps = 0;
  /// max|∇f| at the last point.
  double final_grad = 0.0;
};

/// Lie–Euler integration of dX/dτ = ±∇f(X): X ← X·exp(±h·Xᵀ∇f(X)). A step
/// that moves f against the flow direction by more than 1e−12·max(1,|f|) is
/// retried with h halved. Stops when max|∇f| ≤ grad_tol (converged) or after
/// max_steps steps (not converged).
Trajectory flow(const Objective& objective, const OrthogonalPoint& x0, const FlowParams& params,
                Direction direction);

/// ½(e_n e_nᵀ − X e_n e_nᵀ X): entries −½X_in X_nj, plus ½ at (n,n).
Matrix fnn_gradient(const OrthogonalPoint& x);

/// Closed-form backward and forward limits of a point of M as elements of
/// SO(n−1) under the identifications above. Require n ≥ 3 and
/// |X_nn| ≤ 1e−9; throw std::invalid_argument otherwise.
Matrix fnn_source(const OrthogonalPoint& x);
Matrix fnn_target(const OrthogonalPoint& x);

/// F_0 ∋ JQ ⊕ (−1) ↦ Q and F_{n−1} ∋ Q ⊕ 1 ↦ Q.
Matrix identify_min_component(const Matrix& z);
Matrix identify_max_component(const Matrix& z);

/// J(I − 2wwᵀ/|w|²). Throws std::invalid_argument for the zero vector.
Matrix reflection_r(std::span<const double> w);

/// (X_1n, …, X_{n−1,n})
std::vector<double> level_set_direction(const OrthogonalPoint& x);

/// max |s(X)t(X)⁻¹ − r(w)|
double prop_main_deviation(const OrthogonalPoint& x, std::span<const double> w);
double prop_main_deviation(const OrthogonalPoint& x);
/// prop_main_deviation(x) ≤ tol
bool check_prop_main(const OrthogonalPoint& x, double tol);

/// A Haar sample of SO(n) rotated in the (1,n) plane onto M.
OrthogonalPoint sample_level_set(std::size_t n, std::mt19937_64& rng);

}  // namespace orthomorse
