#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tpflow/matrix.hpp"
#include "tpflow/subsets.hpp"

namespace tpflow {

enum class Normalization { Raw, MaxAbs, FirstNonzero };

template <typename T>
constexpr Normalization default_normalization() {
  return scalar_traits<T>::is_exact ? Normalization::FirstNonzero : Normalization::MaxAbs;
}

/// Projective vector of maximal minors, indexed by k-subsets of [n] in
/// lexicographic order.
template <typename T>
struct PluckerVector {
  int k = 0;
  int n = 0;
  std::vector<T> coords;
  Normalization normalization = Normalization::Raw;

  const T& at(const Subset& s) const { return coords[subset_rank(n, s)]; }
  T& at(const Subset& s) { return coords[subset_rank(n, s)]; }
};

template <typename T>
void normalize_plucker(PluckerVector<T>& p, Normalization norm) {
  if (norm == Normalization::Raw) {
    p.normalization = norm;
    return;
  }
  T scale(0);
  if (norm == Normalization::MaxAbs) {
    for (const auto& c : p.coords) {
      T mag = scalar_traits<T>::abs(c);
      if (mag > scale) scale = mag;
    }
  } else {
    for (const auto& c : p.coords)
      if (c != T(0)) { scale = c; break; }
  }
  if (scale == T(0)) throw std::invalid_argument("cannot normalize the zero Plücker vector");
  for (auto& c : p.coords) c /= scale;
  p.normalization = norm;
}

/// Plücker coordinates of the row span of a full-rank k x n matrix.
/// Throws std::invalid_argument("not a Grassmannian point") when every
/// maximal minor vanishes.
template <typename T>
PluckerVector<T> plucker(const Matrix<T>& m, Normalization norm = default_normalization<T>()) {
  const int k = m.rows();
  const int n = m.cols();
  if (k > n) throw std::invalid_argument("need rows <= cols for Plücker coordinates");
  PluckerVector<T> p;
  p.k = k;
  p.n = n;
  const auto subs = k_subsets(n, k);
  p.coords.reserve(subs.size());
  bool nonzero = false;
  for (const auto& s : subs) {
    T d = m.columns(s).determinant();
    if (d != T(0)) nonzero = true;
    p.coords.push_back(std::move(d));
  }
  if (!nonzero) throw std::invalid_argument("not a Grassmannian point");
  normalize_plucker(p, norm);
  return p;
}

enum class Positivity { TotallyPositive, Boundary, NotTNN };

struct PositivityClass {
  Positivity kind = Positivity::NotTNN;
  /// min |coord| / max |coord|; the TP margin in the float backend.
  double margin = 0.0;
  std::optional<Subset> zero_witness;                  // Boundary
  std::optional<std::pair<Subset, Subset>> sign_witness;  // NotTNN
};

/// Sign classification up to a global scalar. Tolerances are applied after an
/// internal max-abs normalization so the verdict is scale invariant; the exact
/// backend ignores tol.
template <typename T>
PositivityClass classify_positivity(const PluckerVector<T>& p, double tol) {
  PositivityClass out;
  const auto subs = k_subsets(p.n, p.k);
  if constexpr (scalar_traits<T>::is_exact) {
    int pos = -1, neg = -1, zero = -1;
    for (size_t i = 0; i < p.coords.size(); ++i) {
      if (p.coords[i] > 0 && pos < 0) pos = static_cast<int>(i);
      if (p.coords[i] < 0 && neg < 0) neg = static_cast<int>(i);
      if (p.coords[i] == 0 && zero < 0) zero = static_cast<int>(i);
    }
    if (pos >= 0 && neg >= 0) {
      out.kind = Positivity::NotTNN;
      out.sign_witness = {subs[pos], subs[neg]};
      return out;
    }
    if (zero >= 0) {
      out.kind = Positivity::Boundary;
      out.zero_witness = subs[zero];
      return out;
    }
    out.kind = Positivity::TotallyPositive;
    out.margin = 1.0;  // exact strict sign; margin not meaningful here
    return out;
  } else {
    double maxabs = 0;
    for (const auto& c : p.coords) maxabs = std::max(maxabs, std::fabs(to_double(c)));
    if (maxabs == 0) throw std::invalid_argument("zero Plücker vector");
    // Dominant sign is the sign of the largest-magnitude entry.
    double ref = 0;
    for (const auto& c : p.coords)
      if (std::fabs(to_double(c)) == maxabs) { ref = to_double(c); break; }
    const double s = ref > 0 ? 1.0 : -1.0;
    int opposite = -1, zero = -1, first_pos = -1;
    double minabs = maxabs;
    for (size_t i = 0; i < p.coords.size(); ++i) {
      const double v = s * to_double(p.coords[i]) / maxabs;
      minabs = std::min(minabs, std::fabs(v));
      if (v > tol && first_pos < 0) first_pos = static_cast<int>(i);
      if (v < -tol && opposite < 0) opposite = static_cast<int>(i);
      if (std::fabs(v) <= tol && zero < 0) zero = static_cast<int>(i);
    }
    if (opposite >= 0) {
      out.kind = Positivity::NotTNN;
      const Subset& a = subs[first_pos >= 0 ? first_pos : 0];
      out.sign_witness = {a, subs[opposite]};
      return out;
    }
    out.margin = minabs;
    if (zero >= 0) {
      out.kind = Positivity::Boundary;
      out.zero_witness = subs[zero];
      return out;
    }
    out.kind = Positivity::TotallyPositive;
    return out;
  }
}

/// Sum over k-subsets of det((M0)_I) det(M_I). Exact backends also check the
/// Cauchy–Binet identity against det(M0 transpose(M)) directly.
template <typename T>
T cauchy_binet(const Matrix<T>& m0, const Matrix<T>& m) {
  if (m0.rows() != m.rows() || m0.cols() != m.cols())
    throw std::invalid_argument("Cauchy–Binet shape mismatch");
  const int k = m0.rows();
  const int n = m0.cols();
  T sum(0);
  for (const auto& s : k_subsets(n, k)) {
    sum += m0.columns(s).determinant() * m.columns(s).determinant();
  }
  if constexpr (scalar_traits<T>::is_exact) {
    const T direct = (m0 * m.transpose()).determinant();
    if (sum != direct) throw std::logic_error("Cauchy–Binet identity violated");
  }
  return sum;
}

/// Max |three-term relation| of a k<=2 Plücker vector; empty relation set for
/// k < 2 yields 0.
template <typename T>
double plucker_relations_residual(const PluckerVector<T>& p) {
  if (p.k < 2) return 0.0;
  if (p.k != 2) throw std::invalid_argument("relation residual implemented for k <= 2");
  double worst = 0;
  for (const auto& q : k_subsets(p.n, 4)) {
    const double r = to_double(p.at({q[0], q[1]})) * to_double(p.at({q[2], q[3]})) -
                     to_double(p.at({q[0], q[2]})) * to_double(p.at({q[1], q[3]})) +
                     to_double(p.at({q[0], q[3]})) * to_double(p.at({q[1], q[2]}));
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

/// Projective L-inf distance: both vectors are rescaled so the entry where
/// |a| is largest equals 1.
template <typename T>
double projective_distance(const PluckerVector<T>& a, const PluckerVector<T>& b) {
  if (a.coords.size() != b.coords.size()) throw std::invalid_argument("Plücker shape mismatch");
  size_t ref = 0;
  double best = 0;
  for (size_t i = 0; i < a.coords.size(); ++i) {
    const double v = std::fabs(to_double(a.coords[i]));
    if (v > best) { best = v; ref = i; }
  }
  const double sa = to_double(a.coords[ref]);
  const double sb = to_double(b.coords[ref]);
  if (sa == 0 || sb == 0) return 1e300;
  double d = 0;
  for (size_t i = 0; i < a.coords.size(); ++i) {
    d = std::max(d, std::fabs(to_double(a.coords[i]) / sa - to_double(b.coords[i]) / sb));
  }
  return d;
}

}  // namespace tpflow
