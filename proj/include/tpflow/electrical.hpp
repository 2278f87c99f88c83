#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "tpflow/matrix.hpp"
#include "tpflow/plucker.hpp"
#include "tpflow/subsets.hpp"

namespace tpflow {

/// Noncrossing partition of the odd labels {1, 3, ..., 2n-1}, canonicalized:
/// parts sorted internally and by minimum.
struct NoncrossingPartition {
  int n = 0;
  std::vector<std::vector<int>> parts;

  bool operator==(const NoncrossingPartition& o) const { return n == o.n && parts == o.parts; }
  std::string to_string() const;  // "1,3|5"
};

NoncrossingPartition nc_from_string(int n, const std::string& s);

/// Crossing test for a collection of blocks with labels in cyclic order on
/// [2n]; a crossing is an alternation a < b < c < d with a,c in one block and
/// b,d in another.
bool is_noncrossing(const std::vector<std::vector<int>>& parts);

/// All noncrossing partitions of the odd labels, generated recursively
/// (the block of the minimum splits the rest into independent gaps).
/// Deterministic order; the count is the n-th Catalan number.
std::vector<NoncrossingPartition> enumerate_nc(int n);

long long catalan(int n);

/// Kreweras complement: the coarsest partition of the even labels whose
/// union with sigma stays noncrossing on [2n]. Computed by greedy block
/// merging, which is order-independent here because the admissible
/// partitions are exactly the refinements of the region partition of the
/// disk cut by sigma's blocks.
std::vector<std::vector<int>> kreweras(const NoncrossingPartition& sigma);

/// Complement in the other direction (even-label partition to odd labels).
std::vector<std::vector<int>> kreweras_even(int n, const std::vector<std::vector<int>>& even_parts);

/// sigma'(i): for odd i the common refinement with kappa(i) (split i into a
/// singleton); for even i the common coarsening with mu(i) (merge the blocks
/// of i-1 and i+1, labels mod 2n).
NoncrossingPartition sigma_prime(const NoncrossingPartition& sigma, int i);

/// A_sigma: sum of e_I over the (n-1)-subsets I of [2n] concordant with
/// sigma (every part of sigma and of its complement misses exactly one
/// element of I). Indexed lexicographically like Plücker coordinates.
std::vector<long long> a_sigma(const NoncrossingPartition& sigma);

/// (u_i + d_i) acting on a vector indexed by (n-1)-subsets of [2n]:
/// u_i e_I = e_{I - i + (i+1)} when i in I, i+1 not in I (labels mod 2n),
/// d_i likewise with i-1; zero otherwise.
template <typename T>
std::vector<T> ud_apply(int n, int i, const std::vector<T>& v);

template <typename T>
std::vector<T> phi_apply(int n, const std::vector<T>& v);

struct LemmaUdReport {
  int cases = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

/// Exhaustive integer check of the raising/lowering action on every A_sigma:
/// (u_i + d_i) A_sigma equals 0 when sigma'(i) = sigma and A_{sigma'(i)}
/// otherwise.
LemmaUdReport verify_lemma_ud(int n);

/// Row space of the A_sigma vectors with exact rank, exact membership, and a
/// float least-squares residual.
struct HSubspace {
  int n = 0;
  std::vector<NoncrossingPartition> sigmas;
  std::vector<std::vector<long long>> rows;
  int rank = 0;

  bool contains_exact(const std::vector<Rat>& v) const;
  double residual(const std::vector<double>& v) const;

  std::vector<std::vector<double>> ortho;  // orthonormalized rows
};

HSubspace h_subspace(int n);

struct ResistorNetwork {
  std::vector<int> boundary;                     // ordered, distinct node ids
  std::vector<std::tuple<int, int, Rat>> edges;  // (u, v, conductance > 0)
};

/// Boundary response map: the Schur complement of the weighted graph
/// Laplacian onto the boundary nodes. Exact over rationals; symmetric with
/// zero row sums. Throws when an interior node cannot be eliminated
/// (floating interior component).
Matrix<Rat> response_matrix(const ResistorNetwork& net);

struct XnSearchResult {
  bool success = false;
  Matrix<double> matrix;          // (n-1) x 2n lift
  std::vector<double> plucker;    // unit-norm Plücker vector of the lift
  double relation_residual = 0;   // max |three-term relation|
  double h_residual = 0;          // least-squares distance to span(A_sigma)
  bool tnn = false;
  int iterations = 0;
  std::string message;
};

/// Numeric search for a point of X_n = Gr(n-1,2n) cap H: Gauss-Newton on the
/// A_sigma coefficients minimizing the Plücker relation residuals, then a
/// lift back to an (n-1) x 2n matrix. Best-effort; failure is reported, not
/// thrown. n in {2, 3}.
XnSearchResult xn_search(int n, uint64_t seed, double tol);

// --- template implementations ---

template <typename T>
std::vector<T> ud_apply(int n, int i, const std::vector<T>& v) {
  const int big = 2 * n, kk = n - 1;
  const auto subs = k_subsets(big, kk);
  if (v.size() != subs.size()) throw std::invalid_argument("bad big-vector dimension");
  std::vector<T> out(v.size(), T(0));
  const int up = (i % big) + 1;            // i+1 mod 2n, 1-based
  const int down = ((i + big - 2) % big) + 1;  // i-1 mod 2n
  for (size_t r = 0; r < subs.size(); ++r) {
    if (v[r] == T(0)) continue;
    const Subset& s = subs[r];
    const bool has_i = std::binary_search(s.begin(), s.end(), i);
    if (!has_i) continue;
    if (!std::binary_search(s.begin(), s.end(), up)) {
      Subset t;
      t.reserve(s.size());
      for (int e : s)
        if (e != i) t.push_back(e);
      t.push_back(up);
      std::sort(t.begin(), t.end());
      out[subset_rank(big, t)] += v[r];
    }
    if (!std::binary_search(s.begin(), s.end(), down)) {
      Subset t;
      t.reserve(s.size());
      for (int e : s)
        if (e != i) t.push_back(e);
      t.push_back(down);
      std::sort(t.begin(), t.end());
      out[subset_rank(big, t)] += v[r];
    }
  }
  return out;
}

template <typename T>
std::vector<T> phi_apply(int n, const std::vector<T>& v) {
  std::vector<T> acc(v.size(), T(0));
  for (int i = 1; i <= 2 * n; ++i) {
    const auto term = ud_apply(n, i, v);
    for (size_t r = 0; r < acc.size(); ++r) acc[r] += term[r];
  }
  return acc;
}

}  // namespace tpflow
