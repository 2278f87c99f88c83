#pragma once

#include <random>
#include <stdexcept>

#include "tpflow/matrix.hpp"
#include "tpflow/subsets.hpp"

namespace tpflow {

enum class SampleKind { TpVandermonde, BoundaryCoordinate, Generic };

/// Generalized Vandermonde rows (x_i^(j-1)) with random 0 < x_1 < ... < x_k;
/// every maximal minor is positive, so the row span is totally positive.
template <typename T>
Matrix<T> sample_point_tp_vandermonde(int k, int n, uint64_t seed) {
  if (k <= 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> jitter(1, 99);
  Matrix<T> m(k, n);
  for (int i = 0; i < k; ++i) {
    // node in ((i)/k, (i+1)/k), exact in the rational backend
    const T x = T(scalar_traits<T>::from_long(100 * i + jitter(rng))) / scalar_traits<T>::from_long(100 * k);
    T pw(1);
    for (int j = 0; j < n; ++j) {
      m(i, j) = pw;
      pw *= x;
    }
  }
  return m;
}

/// Coordinate subspace spanned by the unit vectors indexed by the selector-th
/// k-subset (lexicographic, wrapping mod C(n,k)). Exactly one Plücker
/// coordinate is nonzero.
template <typename T>
Matrix<T> sample_point_boundary_coordinate(int k, int n, uint64_t selector) {
  if (k <= 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
  const Subset s = subset_unrank(n, k, static_cast<long long>(selector % binomial(n, k)));
  Matrix<T> m(k, n);
  for (int i = 0; i < k; ++i) m(i, s[i] - 1) = T(1);
  return m;
}

template <typename T>
Matrix<T> sample_point_generic(int k, int n, uint64_t seed) {
  if (k <= 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  Matrix<T> m(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = scalar_traits<T>::from_long(num(rng)) / scalar_traits<T>::from_long(den(rng));
  return m;
}

template <typename T>
Matrix<T> sample_point(SampleKind kind, int k, int n, uint64_t seed) {
  switch (kind) {
    case SampleKind::TpVandermonde: return sample_point_tp_vandermonde<T>(k, n, seed);
    case SampleKind::BoundaryCoordinate: return sample_point_boundary_coordinate<T>(k, n, seed);
    case SampleKind::Generic: return sample_point_generic<T>(k, n, seed);
  }
  throw std::invalid_argument("unknown sample kind");
}

}  // namespace tpflow
