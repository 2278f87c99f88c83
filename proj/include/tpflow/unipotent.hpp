#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "tpflow/contractive_flow.hpp"
#include "tpflow/matrix.hpp"
#include "tpflow/subsets.hpp"

namespace tpflow {

/// Upper unitriangular matrix, stored by its strictly-upper entries x_{i,j}
/// (1-based, i < j). The V slice is the set with superdiagonal sum n-1.
template <typename T>
class UnipotentMatrix {
 public:
  explicit UnipotentMatrix(int n) : n_(n), upper_(static_cast<size_t>(n) * (n - 1) / 2, T(0)) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
  }

  int n() const { return n_; }

  T& x(int i, int j) { return upper_[index(i, j)]; }
  const T& x(int i, int j) const { return upper_[index(i, j)]; }

  T entry(int i, int j) const {
    if (i == j) return T(1);
    if (i > j) return T(0);
    return upper_[index(i, j)];
  }

  T superdiagonal_sum() const {
    T s(0);
    for (int i = 1; i < n_; ++i) s += x(i, i + 1);
    return s;
  }

  bool in_v_slice() const { return superdiagonal_sum() == scalar_traits<T>::from_long(n_ - 1); }

  Matrix<T> dense() const {
    Matrix<T> m(n_, n_);
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) m(i - 1, j - 1) = entry(i, j);
    return m;
  }

  static UnipotentMatrix from_dense(const Matrix<T>& m) {
    UnipotentMatrix u(m.rows());
    for (int i = 1; i <= m.rows(); ++i)
      for (int j = i + 1; j <= m.cols(); ++j) u.x(i, j) = m(i - 1, j - 1);
    return u;
  }

  /// exp(e) for the principal nilpotent e: x_{i,j} = 1/(j-i)!.
  static UnipotentMatrix exp_e(int n) {
    UnipotentMatrix u(n);
    for (int i = 1; i <= n; ++i) {
      T f(1);
      for (int j = i + 1; j <= n; ++j) {
        f *= scalar_traits<T>::from_long(j - i);
        u.x(i, j) = T(1) / f;
      }
    }
    return u;
  }

  /// Dilation: multiply the d-th superdiagonal by s^d. Conjugation by a
  /// positive diagonal matrix, so every minor keeps its sign.
  void dilate(const T& s) {
    for (int i = 1; i <= n_; ++i) {
      T pw(1);
      for (int j = i + 1; j <= n_; ++j) {
        pw *= s;
        x(i, j) *= pw;
      }
    }
  }

  bool operator==(const UnipotentMatrix& o) const { return n_ == o.n_ && upper_ == o.upper_; }

 private:
  size_t index(int i, int j) const {
    if (i < 1 || j <= i || j > n_) throw std::out_of_range("unipotent entry index");
    // row i holds n - i entries starting at offset (i-1)(2n-i)/2
    const size_t row_off = static_cast<size_t>(i - 1) * (2 * n_ - i) / 2;
    return row_off + static_cast<size_t>(j - i - 1);
  }

  int n_;
  std::vector<T> upper_;
};

/// The flow a(t) . x = rho(1/t) exp((t-1)e) x rho(t), evaluated by the entry
/// formula t^(i-j) sum_{l=i..j} (t-1)^(l-i)/(l-i)! x_{l,j}. Exact over
/// rationals for rational t; preserves the V slice.
template <typename T>
UnipotentMatrix<T> a_flow(const T& t, const UnipotentMatrix<T>& x) {
  if (!(t > T(0))) throw std::invalid_argument("a(t) requires t > 0");
  const int n = x.n();
  UnipotentMatrix<T> out(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      T sum(0);
      T coeff(1);  // (t-1)^(l-i) / (l-i)!
      for (int l = i; l <= j; ++l) {
        if (l > i) coeff *= (t - T(1)) / scalar_traits<T>::from_long(l - i);
        sum += coeff * x.entry(l, j);
      }
      T tpow(1);
      for (int d = 0; d < j - i; ++d) tpow *= t;
      out.x(i, j) = sum / tpow;
    }
  }
  return out;
}

/// Coordinates centered at exp(e): b_{i,j} = c^(i-j) ((j-i)! x_{i,j} - 1).
template <typename T>
struct BCoords {
  int n = 0;
  T c;
  std::vector<T> values;  // pairs (i,j), i<j, row-major

  const T& b(int i, int j) const { return values[idx(i, j)]; }
  T& b(int i, int j) { return values[idx(i, j)]; }

  T norm_inf() const {
    T m(0);
    for (const auto& v : values) {
      T a = scalar_traits<T>::abs(v);
      if (a > m) m = a;
    }
    return m;
  }

  T superdiagonal_sum() const {
    T s(0);
    for (int i = 1; i < n; ++i) s += b(i, i + 1);
    return s;
  }

 private:
  size_t idx(int i, int j) const {
    const size_t row_off = static_cast<size_t>(i - 1) * (2 * n - i) / 2;
    return row_off + static_cast<size_t>(j - i - 1);
  }
};

template <typename T>
BCoords<T> b_coords(const UnipotentMatrix<T>& x, const T& c) {
  if (!(c > T(1))) throw std::invalid_argument("b-coordinates require c > 1");
  BCoords<T> out;
  out.n = x.n();
  out.c = c;
  out.values.resize(static_cast<size_t>(x.n()) * (x.n() - 1) / 2);
  for (int i = 1; i <= x.n(); ++i) {
    T fact(1);
    T cpow(1);
    for (int j = i + 1; j <= x.n(); ++j) {
      fact = (j - i == 1) ? T(1) : fact * scalar_traits<T>::from_long(j - i);
      cpow *= c;
      out.b(i, j) = (fact * x.x(i, j) - T(1)) / cpow;
    }
  }
  return out;
}

enum class UPositivity { TotallyPositive, Boundary, NotTNN };

/// Classifies by minors det(x_{I,J}) over equal-size row/column subsets.
/// Total nonnegativity needs every minor >= 0; membership in U_{>0} further
/// needs the one-sided minors (j_1 >= i_1, ..., j_s >= i_s) nonzero.
/// Exhaustive for n <= 6; deterministic sampling beyond that.
template <typename T>
UPositivity classify_u_positivity(const UnipotentMatrix<T>& x, double tol) {
  const int n = x.n();
  const Matrix<T> d = x.dense();
  auto minor_det = [&](const Subset& rows, const Subset& cols) {
    Matrix<T> sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t a = 0; a < rows.size(); ++a)
      for (size_t b = 0; b < cols.size(); ++b) sub(static_cast<int>(a), static_cast<int>(b)) = d(rows[a] - 1, cols[b] - 1);
    return sub.determinant();
  };
  auto is_negative = [&](const T& v) {
    if constexpr (scalar_traits<T>::is_exact) return v < T(0);
    else return to_double(v) < -tol;
  };
  auto is_zero = [&](const T& v) {
    if constexpr (scalar_traits<T>::is_exact) return v == T(0);
    else return std::fabs(to_double(v)) <= tol;
  };

  bool one_sided_zero = false;
  if (n <= 6) {
    for (int s = 1; s <= n; ++s) {
      const auto subs = k_subsets(n, s);
      for (const auto& rows : subs) {
        for (const auto& cols : subs) {
          const T v = minor_det(rows, cols);
          if (is_negative(v)) return UPositivity::NotTNN;
          bool one_sided = true;
          for (int a = 0; a < s; ++a)
            if (cols[a] < rows[a]) { one_sided = false; break; }
          if (one_sided && is_zero(v)) one_sided_zero = true;
        }
      }
    }
  } else {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 4000; ++trial) {
      const int s = 1 + static_cast<int>(rng() % n);
      auto pick = [&]() {
        Subset sel;
        while (static_cast<int>(sel.size()) < s) {
          int v = 1 + static_cast<int>(rng() % n);
          bool seen = false;
          for (int u : sel) if (u == v) seen = true;
          if (!seen) sel.push_back(v);
        }
        std::sort(sel.begin(), sel.end());
        return sel;
      };
      const Subset rows = pick(), cols = pick();
      const T v = minor_det(rows, cols);
      if (is_negative(v)) return UPositivity::NotTNN;
      bool one_sided = true;
      for (int a = 0; a < s; ++a)
        if (cols[a] < rows[a]) { one_sided = false; break; }
      if (one_sided && is_zero(v)) one_sided_zero = true;
    }
  }
  return one_sided_zero ? UPositivity::Boundary : UPositivity::TotallyPositive;
}

/// Product of elementary bidiagonal factors (I + t E_{i,i+1}) with random
/// positive t, then dilated onto the V slice. Such products are totally
/// nonnegative; the dilation preserves that.
template <typename T>
UnipotentMatrix<T> sample_v_tnn(int n, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 8);
  std::uniform_int_distribution<int> den(1, 4);
  Matrix<T> acc = Matrix<T>::identity(n);
  std::vector<int> rows;
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 1; i < n; ++i) rows.push_back(i);
  std::shuffle(rows.begin(), rows.end(), rng);
  for (int i : rows) {
    Matrix<T> e = Matrix<T>::identity(n);
    e(i - 1, i) = scalar_traits<T>::from_long(num(rng)) / scalar_traits<T>::from_long(den(rng));
    acc = acc * e;
  }
  UnipotentMatrix<T> x = UnipotentMatrix<T>::from_dense(acc);
  const T target = scalar_traits<T>::from_long(n - 1);
  x.dilate(target / x.superdiagonal_sum());
  return x;
}

/// The reparametrized flow (t, b) -> b(a(e^t) . x(b)) on the V slice, in the
/// codimension-one coordinate chart that drops b_{n-1,n} (recovered from the
/// zero-sum constraint). Norm is the L-inf norm of the full b vector.
ContractiveFlowSpec make_unipotent_flow_spec(int n, double c);

}  // namespace tpflow
