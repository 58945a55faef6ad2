#include "orthomorse/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "orthomorse/linalg.hpp"

namespace orthomorse::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw std::invalid_argument(std::string(what) + ": \"" + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<int> int_array(const json& v, const char* what) {
  if (!v.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw std::invalid_argument(std::string(what) + " must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<double> number_array(const json& v, const char* what) {
  if (!v.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw std::invalid_argument(std::string(what) + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json to_json(const Matrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"entries", std::vector<double>(m.entries().begin(), m.entries().end())}};
}

Matrix matrix_from_json(const json& j) {
  const std::size_t r = size_field(j, "rows", "matrix");
  const std::size_t c = size_field(j, "cols", "matrix");
  return Matrix(r, c, number_array(field(j, "entries", "matrix"), "matrix entries"));
}

json to_json(const Margins& m) { return {{"m", m.m}, {"n", m.n}}; }

Margins margins_from_json(const json& j) {
  return Margins(int_array(field(j, "m", "margins"), "margins m"),
                 int_array(field(j, "n", "margins"), "margins n"));
}

json to_json(const PerfectFilling& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.s(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < f.t(); ++j) row.push_back(f(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Spectrum& s) { return {{"values", s.values}, {"mults", s.mults}}; }

json to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
    return v.convert_to<std::uint64_t>();
  return v.str();
}

json to_json(const IntPolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

json to_json(const CriticalDecomposition& d) {
  json q = json::array(), r = json::array();
  for (const auto& m : d.q) q.push_back(to_json(m));
  for (const auto& m : d.r) r.push_back(to_json(m));
  return {{"filling", to_json(d.filling)}, {"Q", q}, {"R", r}};
}

json to_json(const SignedPermutation& sp) { return {{"signs", sp.signs()}, {"perm", sp.perm()}}; }

namespace {

Spectrum sorted_spectrum(const json& j, const char* what, std::vector<int>& order) {
  std::vector<double> values = number_array(field(j, "values", what), "spectrum values");
  std::vector<int> mults = int_array(field(j, "mults", what), "spectrum mults");
  if (values.size() != mults.size())
    throw std::invalid_argument(std::string(what) + ": values and mults differ in length");
  order.resize(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return values[x] < values[y]; });
  std::vector<double> sv;
  std::vector<int> sm;
  for (int k : order) {
    if (!sv.empty() && values[k] == sv.back())
      throw std::invalid_argument(std::string(what) + ": repeated value; merge it into one multiplicity");
    sv.push_back(values[k]);
    sm.push_back(mults[k]);
  }
  return Spectrum(std::move(sv), std::move(sm));
}

Spectrum spectrum_of_symmetric(const Matrix& a, Matrix& vectors, const char* what) {
  require_square(a, what);
  if (a.empty()) throw std::invalid_argument(std::string(what) + " must be nonempty");
  if (asymmetry(a) > 1e-12 * std::max(1.0, max_abs(a)))
    throw std::invalid_argument(std::string(what) + " must be symmetric");
  SymmetricEigen eig = symmetric_eigen(a);
  double top = 1.0;
  for (double v : eig.values) top = std::max(top, std::abs(v));
  const double merge = 1e-9 * top;
  std::vector<double> values;
  std::vector<int> mults;
  std::vector<double> sums;
  for (double v : eig.values) {
    if (!values.empty() && v - values.back() <= merge) {
      ++mults.back();
      sums.back() += v;
    } else {
      values.push_back(v);
      mults.push_back(1);
      sums.push_back(v);
    }
  }
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = sums[k] / mults[k];
  vectors = std::move(eig.vectors);
  return Spectrum(std::move(values), std::move(mults));
}

}  // namespace

SpectraInput spectra_from_json(const json& j) {
  SpectraInput in;
  if (j.is_object() && j.contains("a") && j.contains("b")) {
    Spectrum a = sorted_spectrum(j.at("a"), "spectrum a", in.order_a);
    Spectrum b = sorted_spectrum(j.at("b"), "spectrum b", in.order_b);
    in.problem = QuadraticProblem(std::move(a), std::move(b));
    return in;
  }
  if (j.is_object() && j.contains("A") && j.contains("B")) {
    Spectrum a = spectrum_of_symmetric(matrix_from_json(j.at("A")), in.eigenvectors_a, "matrix A");
    Spectrum b = spectrum_of_symmetric(matrix_from_json(j.at("B")), in.eigenvectors_b, "matrix B");
    in.problem = QuadraticProblem(std::move(a), std::move(b));
    in.from_matrices = true;
    return in;
  }
  throw std::invalid_argument("spectra: expected keys \"a\" and \"b\", or \"A\" and \"B\"");
}

}  // namespace orthomorse::io
