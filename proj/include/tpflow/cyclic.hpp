#pragma once

#include "tpflow/contractive_flow.hpp"
#include "tpflow/matrix.hpp"
#include "tpflow/plucker.hpp"

namespace tpflow {

/// Signed left cyclic shift S(v_1,...,v_n) = (v_2,...,v_n,(-1)^(k-1) v_1),
/// its transpose, and tau = S + S^T.
struct CyclicOperators {
  int k = 0;
  int n = 0;
  Matrix<Rat> left_shift;
  Matrix<Rat> right_shift;
  Matrix<Rat> tau;
};

CyclicOperators build_operators(int k, int n);

template <typename T>
Matrix<T> shift_matrix(int k, int n) {
  Matrix<T> s(n, n);
  for (int i = 0; i + 1 < n; ++i) s(i, i + 1) = T(1);
  s(n - 1, 0) = (k % 2 == 1) ? T(1) : T(-1);
  return s;
}

/// Closed-form eigensystem of tau. Eigenvalues 2cos(pi m / n) over m = k-1
/// (mod 2), sorted descending; rows of U are the corresponding orthonormal
/// eigenvectors built from the trigonometric vectors, with a fixed
/// deterministic basis inside each two-dimensional eigenspace.
struct TauEigensystem {
  int k = 0;
  int n = 0;
  std::vector<double> lambdas;
  Matrix<double> U;  // n x n, rows orthonormal

  double spectral_gap() const { return lambdas[k - 1] - lambdas[k]; }
  Matrix<double> top_rows(int j) const { return U.block(0, 0, j, n); }
};

TauEigensystem tau_eigensystem(int k, int n);

/// Plücker coordinates of the flow fixed point X0 by the sine-product
/// formula, raw normalization; coords[I] = prod_{i<j in I} sin((j-i) pi / n).
PluckerVector<double> x0_plucker(int k, int n);

/// Chart matrix with rows u_i + sum_j A_{i,j} u_{k+j}; A is k x (n-k).
Matrix<double> chart_embed(const TauEigensystem& es, const Matrix<double>& a);

/// Inverse chart: the unique A with span(chart_embed(A)) = span(M). Throws
/// std::runtime_error("outside chart") when the span meets
/// span(u_{k+1},...,u_n), which cannot happen for totally nonnegative input.
Matrix<double> chart_invert(const TauEigensystem& es, const Matrix<double>& m);

/// Entrywise contraction e^(t (lambda_{k+j} - lambda_i)) A_{i,j}.
Matrix<double> flow_chart(const TauEigensystem& es, double t, const Matrix<double>& a);

/// M exp(t tau) via the eigendecomposition; represents exp(t tau) . span(M).
Matrix<double> flow_grassmann(const TauEigensystem& es, double t, const Matrix<double>& m);

/// Plücker vector of (1 + tS) . X computed both from the minors of the
/// shifted matrix and from the epsilon-sum expansion with mod-n index shifts;
/// the two routes are asserted equal in the exact backend.
template <typename T>
PluckerVector<T> shift_plucker_expansion(const T& t, const Matrix<T>& m);

/// Sum of Plücker coordinates over all subsets obtained from I by increasing
/// exactly one element by 1 mod n; the first-order term of exp(tS).
template <typename T>
std::vector<T> plucker_raise_sum(const PluckerVector<T>& p);

/// M exp(tS) via the truncated power series (S is a signed permutation, the
/// series converges fast for the |t| used in first-order checks).
Matrix<double> flow_shift_only(int k, int n, double t, const Matrix<double>& m);

/// Flow spec on chart coordinates (row-major flattening), Frobenius norm,
/// and membership oracle classify(plucker(chart_embed(A))) at the given tol.
ContractiveFlowSpec make_chart_flow_spec(const TauEigensystem& es, double membership_tol);

// --- template implementations ---

template <typename T>
std::vector<T> plucker_raise_sum(const PluckerVector<T>& p) {
  const auto subs = k_subsets(p.n, p.k);
  std::vector<T> out(subs.size(), T(0));
  for (size_t r = 0; r < subs.size(); ++r) {
    const Subset& s = subs[r];
    for (size_t pos = 0; pos < s.size(); ++pos) {
      Subset shifted = s;
      shifted[pos] = s[pos] == p.n ? 1 : s[pos] + 1;
      std::sort(shifted.begin(), shifted.end());
      bool dup = false;
      for (size_t i = 0; i + 1 < shifted.size(); ++i)
        if (shifted[i] == shifted[i + 1]) dup = true;
      if (dup) continue;
      out[r] += p.at(shifted);
    }
  }
  return out;
}

template <typename T>
PluckerVector<T> shift_plucker_expansion(const T& t, const Matrix<T>& m) {
  const int k = m.rows();
  const int n = m.cols();
  // direct route: minors of M (1 + tS)^T = M + t M S^T
  const Matrix<T> s = shift_matrix<T>(k, n);
  Matrix<T> shifted = m + (m * s.transpose()).scaled(t);
  PluckerVector<T> direct = plucker(shifted, Normalization::Raw);

  // epsilon-sum route from the minors of M itself
  PluckerVector<T> base = plucker(m, Normalization::Raw);
  PluckerVector<T> formula = base;
  const auto subs = k_subsets(n, k);
  const T wrap_sign = (k % 2 == 1) ? T(1) : T(-1);
  for (size_t r = 0; r < subs.size(); ++r) {
    const Subset& idx = subs[r];
    T total(0);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> vals(idx.begin(), idx.end());
      int weight = 0;
      T sign(1);
      for (int pos = 0; pos < k; ++pos) {
        if (!(mask & (1u << pos))) continue;
        ++weight;
        if (vals[pos] == n) {
          vals[pos] = 1;
          sign *= wrap_sign;
        } else {
          ++vals[pos];
        }
      }
      // sort with permutation parity; duplicate labels kill the term
      bool dup = false;
      for (size_t i = 0; i < vals.size() && !dup; ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
          if (vals[i] == vals[j]) { dup = true; break; }
      if (dup) continue;
      for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
          if (vals[i] > vals[j]) { std::swap(vals[i], vals[j]); sign = -sign; }
      T term = sign * base.at(Subset(vals.begin(), vals.end()));
      for (int w = 0; w < weight; ++w) term *= t;
      total += term;
    }
    formula.coords[r] = total;
  }
  if constexpr (scalar_traits<T>::is_exact) {
    if (formula.coords != direct.coords)
      throw std::logic_error("shift expansion mismatch between minor and epsilon-sum routes");
  }
  return direct;
}

}  // namespace tpflow
