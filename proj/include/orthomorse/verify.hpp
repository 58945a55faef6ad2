#pragma once

// Desk-scale property suite over every module. Each property is a sampled or
// exhaustive check whose outcome is deterministic in the seed.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orthomorse/quadratic.hpp"

namespace orthomorse {

struct PropertyResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Restrict to one module by name; empty runs all.
  std::string module;
};

std::vector<PropertyResult> run_verify(const VerifyOptions& options);

/// Strictly increasing values with gaps drawn from [0.5, 1.5), starting in
/// [−1, 1), one per multiplicity.
Spectrum random_spectrum(const std::vector<int>& mults, std::mt19937_64& rng);

/// A filling drawn uniformly from enumerate_fillings(prob.margins()) with
/// Haar-random Q[i] ∈ O(m_i) and R[j] ∈ O(n_j).
CriticalDecomposition random_decomposition(const QuadraticProblem& prob, std::mt19937_64& rng);

/// Distinct-eigenvalue problem with a = b = (1, 2, …, n).
QuadraticProblem distinct_problem(std::size_t n);

}  // namespace orthomorse
