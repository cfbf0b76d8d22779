#pragma once

// Minimal dense row-major matrix over a generic scalar. Sizes here are
// (N+1) x (N+1) with N at desk scale, so there is no sparsity or BLAS;
// the point is that the same assembly code runs over double, Rational
// and BigFloat.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gdrate/numeric.hpp"

namespace gdrate {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const = default;

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix r = *this;
    r += o;
    return r;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix r = *this;
    r -= o;
    return r;
  }
  Matrix operator*(const T& s) const {
    Matrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
  }

  /// (M + M^T) / 2
  Matrix symmetric_part() const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = ((*this)(i, j) + (*this)(j, i)) / T(2);
    return r;
  }

  T max_abs() const {
    T m(0);
    for (const auto& v : data_) {
      T a = abs_value(v);
      if (a > m) m = a;
    }
    return m;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == T(0))) return false;
    return true;
  }

  std::vector<T> row(std::size_t i) const {
    std::vector<T> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Rank-one update target += s * v v^T.
template <class T>
void add_scaled_outer(Matrix<T>& target, const T& s, const std::vector<T>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == T(0)) continue;
    const T si = s * v[i];
    for (std::size_t j = 0; j < v.size(); ++j) target(i, j) += si * v[j];
  }
}

}  // namespace gdrate
