#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace orthomorse {

/// Dense row-major real matrix. Element access is 0-based; the index types
/// that mirror the mathematics (SkewIndex, SignedPermutation, subsets) are
/// 1-based. Zero-sized matrices are legal values.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Throws std::invalid_argument if entries.size() != rows*cols or any entry
  /// is not finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> entries() { return data_; }
  std::span<const double> entries() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  /// Columns [c0, c0+nc).
  Matrix columns(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  double trace() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);

/// Tr(AᵀB) = Σ A_ij B_ij.
double frobenius_dot(const Matrix& a, const Matrix& b);
/// Tr(AB) without forming the product.
double trace_of_product(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

/// ½(A + Aᵀ) and ½(A − Aᵀ).
Matrix symmetric_part(const Matrix& a);
Matrix skew_part(const Matrix& a);
/// max |A − Aᵀ|
double asymmetry(const Matrix& a);

/// Block-diagonal assembly. Zero-sized blocks are skipped over.
Matrix direct_sum(std::span<const Matrix> blocks);
Matrix direct_sum(const Matrix& a, const Matrix& b);

void require_same_shape(const Matrix& a, const Matrix& b, const char* what);
void require_square(const Matrix& a, const char* what);

}  // namespace orthomorse
