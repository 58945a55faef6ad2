#pragma once

// JSON encodings shared by the CLI and the regression tests.
//
//   Matrix   {"rows": r, "cols": c, "entries": [row-major numbers]}
//   Margins  {"m": [..], "n": [..]}
//   Spectra  {"a": {"values": [..], "mults": [..]}, "b": {...}}
//            or {"A": Matrix, "B": Matrix} with both symmetric.
//
// Malformed input raises std::invalid_argument (or nlohmann::json::exception
// from the parser itself).

#include <json.hpp>
#include <string>
#include <vector>

#include "orthomorse/combinatorics.hpp"
#include "orthomorse/linear.hpp"
#include "orthomorse/matrix.hpp"
#include "orthomorse/quadratic.hpp"

namespace orthomorse::io {

using nlohmann::json;

json read_json_file(const std::string& path);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const Margins& m);
Margins margins_from_json(const json& j);

json to_json(const PerfectFilling& f);
json to_json(const Spectrum& s);
/// Exact when the value fits in 64 bits, a decimal string otherwise.
json to_json(const BigInt& v);
json to_json(const IntPolynomial& p);
json to_json(const CriticalDecomposition& d);

/// Spectra after sorting. For spectrum input `order_a[k]` is the input
/// position of the k-th sorted value; it is empty for matrix input.
struct SpectraInput {
  QuadraticProblem problem;
  std::vector<int> order_a;
  std::vector<int> order_b;
  /// Present for matrix input: A = U_A Diag(a) U_Aᵀ, so f_{A,B}(X) equals
  /// the diagonal problem at U_Aᵀ X U_B.
  bool from_matrices = false;
  Matrix eigenvectors_a;
  Matrix eigenvectors_b;
};

/// Eigenvalues within 1e−9·max(1, max|λ|) of each other are merged into one
/// value of the reduced spectrum.
SpectraInput spectra_from_json(const json& j);

/// "p_1,...,p_k" style compact signature of a signed permutation.
json to_json(const SignedPermutation& sp);

}  // namespace orthomorse::io
