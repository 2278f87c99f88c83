#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "tpflow/rational.hpp"
#include "tpflow/subsets.hpp"

namespace tpflow {

/// Dense rectangular matrix over an exact or floating scalar. Entries are
/// addressed 0-based; column selection by Subset uses the 1-based labels
/// shared with Plücker indexing.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T init = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, init) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("matrix dimensions must be positive");
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& v : r) data_.push_back(v);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int l = 0; l < cols_; ++l) {
        const T& a = (*this)(i, l);
        if (a == T(0)) continue;
        for (int j = 0; j < o.cols_; ++j) m(i, j) += a * o(l, j);
      }
    return m;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
    return m;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
    return m;
  }

  Matrix scaled(const T& s) const {
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  /// Columns selected by 1-based labels, in the given order.
  Matrix columns(const Subset& labels) const {
    Matrix m(rows_, static_cast<int>(labels.size()));
    for (size_t j = 0; j < labels.size(); ++j) {
      const int c = labels[j] - 1;
      if (c < 0 || c >= cols_) throw std::out_of_range("column label out of range");
      for (int i = 0; i < rows_; ++i) m(i, static_cast<int>(j)) = (*this)(i, c);
    }
    return m;
  }

  Matrix block(int row0, int col0, int nrows, int ncols) const {
    Matrix m(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
    return m;
  }

  /// Gaussian elimination with pivoting; exact over Rat.
  T determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    Matrix a = *this;
    const int n = rows_;
    T det(1);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      if constexpr (scalar_traits<T>::is_exact) {
        for (int r = col; r < n; ++r)
          if (a(r, col) != T(0)) { piv = r; break; }
      } else {
        T best(0);
        for (int r = col; r < n; ++r) {
          T mag = scalar_traits<T>::abs(a(r, col));
          if (mag > best) { best = mag; piv = r; }
        }
      }
      if (piv < 0 || a(piv, col) == T(0)) return T(0);
      if (piv != col) {
        for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
        det = -det;
      }
      det *= a(col, col);
      for (int r = col + 1; r < n; ++r) {
        if (a(r, col) == T(0)) continue;
        T f = a(r, col) / a(col, col);
        for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      }
    }
    return det;
  }

  /// Solves (*this) * X = B. Throws std::runtime_error when singular; the
  /// float backend treats pivots below singular_tol * max|entry| as zero.
  Matrix solve(const Matrix& b, double singular_tol = 1e-12) const {
    if (rows_ != cols_) throw std::invalid_argument("solve requires a square matrix");
    if (b.rows_ != rows_) throw std::invalid_argument("solve shape mismatch");
    const int n = rows_;
    Matrix a = *this;
    Matrix x = b;
    T scale(0);
    if constexpr (!scalar_traits<T>::is_exact) {
      for (const auto& v : a.data_) scale = std::max(scale, scalar_traits<T>::abs(v));
      if (scale == T(0)) scale = T(1);
    }
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      T best(0);
      for (int r = col; r < n; ++r) {
        T mag = scalar_traits<T>::abs(a(r, col));
        if (piv < 0 || mag > best) { best = mag; piv = r; }
      }
      bool singular;
      if constexpr (scalar_traits<T>::is_exact) {
        singular = (best == T(0));
      } else {
        singular = !(best > scale * singular_tol);
      }
      if (singular) throw std::runtime_error("singular linear system");
      if (piv != col) {
        for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
        for (int j = 0; j < x.cols_; ++j) std::swap(x(piv, j), x(col, j));
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || a(r, col) == T(0)) continue;
        T f = a(r, col) / a(col, col);
        for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        for (int j = 0; j < x.cols_; ++j) x(r, j) -= f * x(col, j);
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < x.cols_; ++j) x(i, j) /= a(i, i);
    return x;
  }

  int rank(double tol = 1e-10) const {
    Matrix a = *this;
    int r = 0;
    T scale(0);
    if constexpr (!scalar_traits<T>::is_exact) {
      for (const auto& v : a.data_) scale = std::max(scale, scalar_traits<T>::abs(v));
      if (scale == T(0)) return 0;
    }
    for (int col = 0; col < cols_ && r < rows_; ++col) {
      int piv = -1;
      T best(0);
      for (int i = r; i < rows_; ++i) {
        T mag = scalar_traits<T>::abs(a(i, col));
        if (piv < 0 || mag > best) { best = mag; piv = i; }
      }
      bool zero;
      if constexpr (scalar_traits<T>::is_exact) {
        zero = (best == T(0));
      } else {
        zero = !(best > scale * tol);
      }
      if (zero) continue;
      if (piv != r)
        for (int j = 0; j < cols_; ++j) std::swap(a(piv, j), a(r, j));
      for (int i = r + 1; i < rows_; ++i) {
        if (a(i, col) == T(0)) continue;
        T f = a(i, col) / a(r, col);
        for (int j = col; j < cols_; ++j) a(i, j) -= f * a(r, j);
      }
      ++r;
    }
    return r;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<double> to_double_matrix(const Matrix<T>& m) {
  Matrix<double> d(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d(i, j) = to_double(m(i, j));
  return d;
}

}  // namespace tpflow
