#pragma once

#include "dcoh/rational.hpp"

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcoh {

/// Dense row-major matrix over an exact ring (Integer or Rational).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(size_t i, size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(size_t i, size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (sgn(x) != 0) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> row(size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
  std::vector<T> col(size_t j) const {
    std::vector<T> c(rows_);
    for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix<T> c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size())
    throw std::invalid_argument("matrix-vector product: " + std::to_string(a.cols()) + " columns vs vector of " +
                                std::to_string(v.size()));
  std::vector<T> r(a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) r[i] += a(i, j) * v[j];
  return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix<T> c(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a) {
  Matrix<T> c(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  return a + (-b);
}

template <class T, class S>
Matrix<T> scaled(const Matrix<T>& a, const S& s) {
  Matrix<T> c(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * s;
  return c;
}

/// Block matrix [[a, b], [c, d]]; blocks must have compatible shapes.
template <class T>
Matrix<T> block(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c, const Matrix<T>& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw std::invalid_argument("block: incompatible block shapes");
  Matrix<T> m(a.rows() + c.rows(), a.cols() + b.cols());
  auto put = [&m](const Matrix<T>& x, size_t r0, size_t c0) {
    for (size_t i = 0; i < x.rows(); ++i)
      for (size_t j = 0; j < x.cols(); ++j) m(r0 + i, c0 + j) = x(i, j);
  };
  put(a, 0, 0);
  put(b, 0, a.cols());
  put(c, a.rows(), 0);
  put(d, a.rows(), a.cols());
  return m;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  return block(a, b, Matrix<T>(0, a.cols()), Matrix<T>(0, b.cols()));
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  return block(a, Matrix<T>(a.rows(), 0), b, Matrix<T>(b.rows(), 0));
}

/// Matrix whose columns are the given vectors (all of length `rows`).
template <class T>
Matrix<T> from_columns(const std::vector<std::vector<T>>& cols, size_t rows) {
  Matrix<T> m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("from_columns: ragged column");
    for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

RatMatrix to_rational(const IntMatrix& m);
IntMatrix to_integer(const RatMatrix& m);  // throws std::domain_error on non-integral entries
bool is_integral(const RatMatrix& m);

}  // namespace dcoh
