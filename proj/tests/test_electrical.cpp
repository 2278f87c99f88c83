#include <doctest.h>

#include <algorithm>
#include <set>

#include "tpflow/cyclic.hpp"
#include "tpflow/electrical.hpp"

using namespace tpflow;

namespace {

// brute-force oracle: every set partition of the odd labels via restricted
// growth strings, filtered by the crossing test
std::set<std::vector<std::vector<int>>> brute_nc(int n) {
  std::vector<int> odds;
  for (int i = 1; i <= 2 * n - 1; i += 2) odds.push_back(i);
  std::set<std::vector<std::vector<int>>> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    int blocks = 0;
    for (int v : rgs) blocks = std::max(blocks, v + 1);
    std::vector<std::vector<int>> parts(blocks);
    for (int i = 0; i < n; ++i) parts[rgs[i]].push_back(odds[i]);
    if (is_noncrossing(parts)) {
      std::sort(parts.begin(), parts.end());
      out.insert(parts);
    }
    int i = n - 1;
    for (; i > 0; --i) {
      int maxv = 0;
      for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
      if (rgs[i] <= maxv) {
        ++rgs[i];
        break;
      }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("crossing predicate") {
  CHECK(is_noncrossing({{1, 3}, {5}}));
  CHECK_FALSE(is_noncrossing({{1, 5}, {3, 7}}));
  CHECK(is_noncrossing({{1, 7}, {3, 5}}));         // nested
  CHECK_FALSE(is_noncrossing({{1, 3}, {2, 4}}));   // mixed parity labels cross too
}

TEST_CASE("enumeration counts and brute-force oracle") {
  const std::vector<long long> cat{1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 7; ++n) {
    const auto all = enumerate_nc(n);
    CHECK(static_cast<long long>(all.size()) == cat[n]);
    CHECK(catalan(n) == cat[n]);
    std::set<std::vector<std::vector<int>>> seen;
    for (const auto& s : all) {
      CHECK(is_noncrossing(s.parts));
      auto sorted = s.parts;
      std::sort(sorted.begin(), sorted.end());
      seen.insert(sorted);
    }
    CHECK(seen.size() == all.size());  // no duplicates
    if (n <= 5) CHECK(seen == brute_nc(n));
  }
  SUBCASE("worked n=3 membership") {
    const auto all = enumerate_nc(3);
    bool found = false;
    for (const auto& s : all) found = found || s == nc_from_string(3, "1,3|5");
    CHECK(found);
  }
}

TEST_CASE("kreweras complement") {
  SUBCASE("worked examples") {
    CHECK(kreweras(nc_from_string(3, "1,3|5")) == std::vector<std::vector<int>>{{2}, {4, 6}});
    CHECK(kreweras(nc_from_string(3, "1|3|5")) == std::vector<std::vector<int>>{{2, 4, 6}});
    CHECK(kreweras(nc_from_string(3, "1,3,5")) == std::vector<std::vector<int>>{{2}, {4}, {6}});
  }
  SUBCASE("part-count identity and double complement, exhaustive") {
    for (int n = 1; n <= 5; ++n) {
      for (const auto& s : enumerate_nc(n)) {
        const auto comp = kreweras(s);
        CHECK(static_cast<int>(s.parts.size() + comp.size()) == n + 1);
        CHECK(kreweras_even(n, comp) == s.parts);
        // the union stays noncrossing
        auto both = s.parts;
        for (const auto& p : comp) both.push_back(p);
        CHECK(is_noncrossing(both));
      }
    }
  }
  SUBCASE("anti-isomorphism: refinement reverses") {
    const int n = 4;
    const auto all = enumerate_nc(n);
    auto refines = [](const std::vector<std::vector<int>>& x,
                      const std::vector<std::vector<int>>& y) {
      for (const auto& px : x) {
        bool inside = false;
        for (const auto& py : y)
          inside = inside || std::includes(py.begin(), py.end(), px.begin(), px.end());
        if (!inside) return false;
      }
      return true;
    };
    for (const auto& a : all)
      for (const auto& b : all) {
        if (!refines(a.parts, b.parts)) continue;
        CHECK(refines(kreweras(b), kreweras(a)));
      }
  }
}

TEST_CASE("sigma_prime worked table") {
  const auto s = nc_from_string(3, "1,3|5");
  CHECK(sigma_prime(s, 1) == nc_from_string(3, "1|3|5"));
  CHECK(sigma_prime(s, 3) == nc_from_string(3, "1|3|5"));
  CHECK(sigma_prime(s, 2) == s);
  CHECK(sigma_prime(s, 5) == s);
  CHECK(sigma_prime(s, 4) == nc_from_string(3, "1,3,5"));
  CHECK(sigma_prime(s, 6) == nc_from_string(3, "1,3,5"));
  CHECK_THROWS_AS(sigma_prime(s, 7), std::invalid_argument);
}

TEST_CASE("A_sigma vectors") {
  SUBCASE("worked n=3 values") {
    const auto v = a_sigma(nc_from_string(3, "1,3|5"));
    std::vector<long long> want(15, 0);
    for (const char* key : {"1,4", "1,6", "3,4", "3,6"})
      want[subset_rank(6, subset_from_key(6, key))] = 1;
    CHECK(v == want);

    const auto singles = a_sigma(nc_from_string(3, "1|3|5"));
    std::vector<long long> want2(15, 0);
    for (const char* key : {"2,4", "2,6", "4,6"})
      want2[subset_rank(6, subset_from_key(6, key))] = 1;
    CHECK(singles == want2);
  }
  SUBCASE("n=1 forced vector") {
    CHECK(a_sigma(nc_from_string(1, "1")) == std::vector<long long>{1});
  }
  SUBCASE("term count is the product of part sizes") {
    for (int n = 2; n <= 5; ++n)
      for (const auto& s : enumerate_nc(n)) {
        long long want = 1;
        for (const auto& p : s.parts) want *= static_cast<long long>(p.size());
        for (const auto& p : kreweras(s)) want *= static_cast<long long>(p.size());
        long long got = 0;
        for (long long c : a_sigma(s)) {
          CHECK(c >= 0);
          CHECK(c <= 1);
          got += c;
        }
        CHECK(got == want);
      }
  }
}

TEST_CASE("raising and lowering operators") {
  const auto s = nc_from_string(3, "1,3|5");
  const auto as = a_sigma(s);
  SUBCASE("worked actions") {
    CHECK(ud_apply(3, 1, as) == a_sigma(nc_from_string(3, "1|3|5")));
    CHECK(ud_apply(3, 2, as) == std::vector<long long>(15, 0));
  }
  SUBCASE("basis action edge cases") {
    std::vector<long long> e14(15, 0);
    e14[subset_rank(6, {1, 4})] = 1;
    CHECK(ud_apply(3, 3, e14) == std::vector<long long>(15, 0));  // 3 not in I
    // wraparound: u_6 sends 6 to 1; d_6 sends 6 to 5
    std::vector<long long> e36(15, 0);
    e36[subset_rank(6, {3, 6})] = 1;
    std::vector<long long> want(15, 0);
    want[subset_rank(6, {1, 3})] = 1;
    want[subset_rank(6, {3, 5})] = 1;
    CHECK(ud_apply(3, 6, e36) == want);
  }
  SUBCASE("exhaustive lemma check for n <= 5") {
    for (int n = 1; n <= 5; ++n) {
      const auto rep = verify_lemma_ud(n);
      CHECK(rep.cases == static_cast<int>(enumerate_nc(n).size()) * 2 * n);
      CHECK(rep.pass());
    }
  }
}

TEST_CASE("Phi and the subspace H") {
  SUBCASE("Phi(0) = 0") {
    CHECK(phi_apply(3, std::vector<long long>(15, 0)) == std::vector<long long>(15, 0));
  }
  SUBCASE("worked combination") {
    auto want = a_sigma(nc_from_string(3, "1|3|5"));
    const auto one = a_sigma(nc_from_string(3, "1,3,5"));
    for (size_t i = 0; i < want.size(); ++i) want[i] = 2 * want[i] + 2 * one[i];
    CHECK(phi_apply(3, a_sigma(nc_from_string(3, "1,3|5"))) == want);
  }
  SUBCASE("Phi preserves the span exactly") {
    for (int n = 1; n <= 4; ++n) {
      const auto h = h_subspace(n);
      for (const auto& s : h.sigmas) {
        const auto phi = phi_apply(n, a_sigma(s));
        CHECK(h.contains_exact(std::vector<Rat>(phi.begin(), phi.end())));
      }
    }
  }
  SUBCASE("rank and residuals") {
    const auto h2 = h_subspace(2);
    CHECK(h2.rows.size() == 2);
    CHECK(h2.rows.front().size() == 4);
    CHECK(h2.rank == 2);
    const auto h3 = h_subspace(3);
    CHECK(h3.rows.size() == 5);
    CHECK(h3.rows.front().size() == 15);
    CHECK(h3.rank >= 4);
    for (const auto& row : h3.rows) {
      std::vector<double> v(row.begin(), row.end());
      CHECK(h3.residual(v) < 1e-9);
    }
    // a vector off the span has visible residual
    std::vector<double> off(15, 0.0);
    off[subset_rank(6, {1, 2})] = 1.0;
    CHECK(h3.residual(off) > 0.1);
  }
}

TEST_CASE("response matrices") {
  SUBCASE("single edge is Ohm's law") {
    ResistorNetwork net;
    net.boundary = {1, 2};
    net.edges = {{1, 2, Rat(7, 4)}};
    const auto lam = response_matrix(net);
    CHECK(lam(0, 0) == Rat(7, 4));
    CHECK(lam(0, 1) == Rat(-7, 4));
    CHECK(lam(1, 0) == Rat(-7, 4));
    CHECK(lam(1, 1) == Rat(7, 4));
  }
  SUBCASE("series reduction") {
    ResistorNetwork net;
    net.boundary = {1, 2};
    net.edges = {{1, 5, Rat(2)}, {5, 2, Rat(3)}};
    const auto lam = response_matrix(net);
    CHECK(lam(0, 0) == Rat(6, 5));  // ab/(a+b)
    CHECK(lam(0, 1) == Rat(-6, 5));
  }
  SUBCASE("3-star") {
    ResistorNetwork net;
    net.boundary = {1, 2, 3};
    const Rat a(1, 2), b(4), c(9, 5);
    net.edges = {{1, 9, a}, {2, 9, b}, {3, 9, c}};
    const auto lam = response_matrix(net);
    const Rat denom = a + b + c;
    CHECK(lam(0, 1) == -(a * b) / denom);
    CHECK(lam(0, 2) == -(a * c) / denom);
    CHECK(lam(1, 2) == -(b * c) / denom);
    for (int i = 0; i < 3; ++i) {
      Rat row(0);
      for (int j = 0; j < 3; ++j) {
        row += lam(i, j);
        CHECK(lam(i, j) == lam(j, i));
      }
      CHECK(row == 0);
    }
  }
  SUBCASE("parallel edges add") {
    ResistorNetwork net;
    net.boundary = {1, 2};
    net.edges = {{1, 2, Rat(2)}, {1, 2, Rat(5)}};
    CHECK(response_matrix(net)(0, 0) == Rat(7));
  }
  SUBCASE("errors") {
    ResistorNetwork floating;
    floating.boundary = {1, 2};
    floating.edges = {{1, 2, Rat(1)}, {3, 4, Rat(1)}};
    CHECK_THROWS_AS(response_matrix(floating), std::runtime_error);
    ResistorNetwork bad;
    bad.boundary = {1, 2};
    bad.edges = {{1, 2, Rat(-1)}};
    CHECK_THROWS_AS(response_matrix(bad), std::invalid_argument);
  }
}

TEST_CASE("xn search") {
  SUBCASE("n = 2 is immediate") {
    const auto res = xn_search(2, 0, 1e-10);
    REQUIRE(res.success);
    CHECK(res.relation_residual < 1e-14);
    CHECK(res.h_residual < 1e-12);
    CHECK(res.matrix.rows() == 1);
    CHECK(res.matrix.cols() == 4);
  }
  SUBCASE("n = 3 converges with small residuals") {
    const auto res = xn_search(3, 0, 1e-10);
    REQUIRE(res.success);
    CHECK(res.relation_residual < 1e-10);
    CHECK(res.h_residual < 1e-10);
    CHECK(res.matrix.rows() == 2);
    CHECK(res.matrix.cols() == 6);
  }
  SUBCASE("flow invariance of H and the first-order field") {
    const auto res = xn_search(3, 1, 1e-10);
    REQUIRE(res.success);
    const auto es = tau_eigensystem(2, 6);
    const auto h = h_subspace(3);
    for (double t : {0.25, 0.5, 1.0}) {
      auto p = plucker(flow_grassmann(es, t, res.matrix), Normalization::Raw);
      double norm = 0;
      for (double v : p.coords) norm += v * v;
      norm = std::sqrt(norm);
      for (double& v : p.coords) v /= norm;
      CHECK(h.residual(p.coords) < 1e-8);
      if (res.tnn) {
        const auto cls = classify_positivity(p, 1e-9);
        CHECK(cls.kind == Positivity::TotallyPositive);
      }
    }
    const double t = 1e-4;
    const auto plus = plucker(flow_grassmann(es, t, res.matrix), Normalization::Raw);
    const auto minus = plucker(flow_grassmann(es, -t, res.matrix), Normalization::Raw);
    const auto want = phi_apply(3, plucker(res.matrix, Normalization::Raw).coords);
    double scale = 0;
    for (double v : want) scale = std::max(scale, std::fabs(v));
    for (size_t i = 0; i < want.size(); ++i) {
      const double fd = (plus.coords[i] - minus.coords[i]) / (2 * t);
      CHECK(std::fabs(fd - want[i]) / scale < 1e-4);
    }
  }
  SUBCASE("unsupported n fails gracefully") {
    const auto res = xn_search(5, 0, 1e-10);
    CHECK_FALSE(res.success);
    CHECK(!res.message.empty());
  }
}
