#include "tpflow/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tpflow/amplituhedron.hpp"
#include "tpflow/contractive_flow.hpp"
#include "tpflow/cyclic.hpp"
#include "tpflow/electrical.hpp"
#include "tpflow/json_io.hpp"
#include "tpflow/plucker.hpp"
#include "tpflow/sampling.hpp"
#include "tpflow/trajectory.hpp"
#include "tpflow/unipotent.hpp"

namespace tpflow {

namespace {

struct PendingCase {
  std::string id;
  std::vector<std::string> ops;
  std::function<std::pair<bool, std::string>()> run;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// worst |a - b| over two flat double containers
template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

double max_abs_diff_mat(const Matrix<double>& a, const Matrix<double>& b) {
  double d = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) d = std::max(d, std::fabs(a(i, j) - b(i, j)));
  return d;
}

double frob(const Matrix<double>& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

Matrix<double> random_chart_point(int k, int nk, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> box(-scale, scale);
  Matrix<double> a(k, nk);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < nk; ++j) a(i, j) = box(rng);
  return a;
}

// ---------------------------------------------------------------- gr suite

void add_gr_cases(std::vector<PendingCase>& cases, uint64_t seed, double tol) {
  cases.push_back({"gr.cauchy_binet.exact", {"cauchy_binet", "sample_point"}, [seed] {
    for (int trial = 0; trial < 12; ++trial) {
      const int k = 1 + static_cast<int>(trial % 3);
      const int n = k + 2 + static_cast<int>(trial % 3);
      const auto m0 = sample_point_generic<Rat>(k, n, seed + 11 * trial);
      const auto m1 = sample_point_generic<Rat>(k, n, seed + 11 * trial + 5);
      const Rat lhs = cauchy_binet(m0, m1);
      const Rat rhs = (m0 * m1.transpose()).determinant();
      if (lhs != rhs) return std::pair{false, std::string("sum of products != det(M0 M^T)")};
    }
    return std::pair{true, std::string("12 random exact identities")};
  }});

  cases.push_back({"gr.plucker.row_invariance", {"plucker", "sample_point"}, [seed] {
    std::mt19937_64 rng(seed + 1);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
      const int k = 2, n = 5;
      const auto m = sample_point_generic<Rat>(k, n, seed + 100 + trial);
      Matrix<Rat> g(k, k);
      do {
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) g(i, j) = entry(rng);
      } while (g.determinant() == 0);
      PluckerVector<Rat> p1, p2;
      try {
        p1 = plucker(m, Normalization::FirstNonzero);
      } catch (const std::invalid_argument&) {
        continue;  // rank-deficient draw
      }
      p2 = plucker(g * m, Normalization::FirstNonzero);
      if (p1.coords != p2.coords)
        return std::pair{false, std::string("normalized Plücker differs after row operations")};
    }
    return std::pair{true, std::string("GL-invariance on 10 random points")};
  }});

  cases.push_back({"gr.plucker.relations_k2", {"plucker"}, [seed] {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 4 + trial % 3;
      const auto m = sample_point_tp_vandermonde<Rat>(2, n, seed + trial);
      const auto p = plucker(m, Normalization::Raw);
      for (const auto& q : k_subsets(n, 4)) {
        const Rat r = p.at({q[0], q[1]}) * p.at({q[2], q[3]}) -
                      p.at({q[0], q[2]}) * p.at({q[1], q[3]}) +
                      p.at({q[0], q[3]}) * p.at({q[1], q[2]});
        if (r != 0) return std::pair{false, std::string("three-term relation nonzero (exact)")};
      }
    }
    return std::pair{true, std::string("exact three-term relations on 10 points")};
  }});

  cases.push_back({"gr.classify.vandermonde_tp", {"classify_positivity", "sample_point"}, [seed, tol] {
    for (int k = 1; k <= 3; ++k)
      for (int n = k + 1; n <= 6; ++n)
        for (int t = 0; t < 4; ++t) {
          const auto m = sample_point_tp_vandermonde<double>(k, n, seed + 997 * t + n);
          if (classify_positivity(plucker(m), tol).kind != Positivity::TotallyPositive)
            return std::pair{false, "vandermonde point not TP at k=" + std::to_string(k) +
                                        " n=" + std::to_string(n)};
        }
    return std::pair{true, std::string("all vandermonde samples TP")};
  }});

  cases.push_back({"gr.eigensystem.closed_form", {"tau_eigensystem", "build_operators"}, [] {
    double worst = 0;
    for (int n = 2; n <= 12; ++n) {
      for (int k = 1; k < n; ++k) {
        const auto es = tau_eigensystem(k, n);
        const auto ops = build_operators(k, n);
        Eigen::MatrixXd tau(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) tau(i, j) = to_double(ops.tau(i, j));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tau);
        std::vector<double> numeric(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
        std::sort(numeric.rbegin(), numeric.rend());
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::fabs(numeric[i] - es.lambdas[i]));
      }
    }
    return std::pair{worst < 1e-9, "max |closed form - eigensolver| = " + fmt(worst)};
  }});

  cases.push_back({"gr.eigensystem.structure", {"tau_eigensystem", "build_operators"}, [] {
    for (int n = 2; n <= 12; ++n)
      for (int k = 1; k < n; ++k) {
        const auto es = tau_eigensystem(k, n);
        if (!(es.spectral_gap() > 0))
          return std::pair{false, "spectral gap not positive at k=" + std::to_string(k) +
                                      " n=" + std::to_string(n)};
        // orthonormality and the eigen equation
        const auto ops = build_operators(k, n);
        Matrix<double> tau(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) tau(i, j) = to_double(ops.tau(i, j));
        const Matrix<double> gram = es.U * es.U.transpose();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (std::fabs(gram(i, j) - (i == j ? 1.0 : 0.0)) > 1e-9)
              return std::pair{false, std::string("rows of U not orthonormal")};
        const Matrix<double> tu = es.U * tau;  // row i: u_i tau = lambda_i u_i
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (std::fabs(tu(i, j) - es.lambdas[i] * es.U(i, j)) > 1e-9)
              return std::pair{false, std::string("eigen equation violated")};
      }
    return std::pair{true, std::string("gap, orthonormality, eigen equation for n <= 12")};
  }});

  cases.push_back({"gr.x0.sin_formula", {"x0_plucker", "tau_eigensystem", "plucker"}, [] {
    double worst = 0;
    for (int n = 2; n <= 10; ++n)
      for (int k = 1; k < n; ++k) {
        const auto es = tau_eigensystem(k, n);
        const auto direct = plucker(es.top_rows(k), Normalization::Raw);
        const auto formula = x0_plucker(k, n);
        worst = std::max(worst, projective_distance(formula, direct));
      }
    return std::pair{worst < 1e-9, "max projective distance = " + fmt(worst)};
  }});

  cases.push_back({"gr.chart.roundtrip", {"chart_embed", "chart_invert"}, [seed] {
    std::mt19937_64 rng(seed + 7);
    for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 6}}) {
      const auto es = tau_eigensystem(k, n);
      const Matrix<double> zero_chart = chart_invert(es, es.top_rows(k));
      if (frob(zero_chart) > 1e-9)
        return std::pair{false, std::string("chart_invert(X0) != 0")};
      for (int t = 0; t < 20; ++t) {
        const auto a = random_chart_point(k, n - k, rng, 2.0);
        const auto back = chart_invert(es, chart_embed(es, a));
        if (max_abs_diff_mat(a, back) > 1e-9)
          return std::pair{false, std::string("chart round trip diverged")};
      }
    }
    return std::pair{true, std::string("round trips at (2,4),(2,5),(3,6)")};
  }});

  cases.push_back({"gr.chart.gr24_example", {"chart_embed", "chart_invert", "plucker"}, [seed] {
    const auto es = tau_eigensystem(2, 4);
    const double r2 = std::sqrt(2.0);
    // reference basis of the worked example; rows have norm 2
    const Matrix<double> paper{{0, 1, r2, 1}, {-r2, -1, 0, 1}, {r2, -1, 0, 1}, {0, 1, -r2, 1}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (std::fabs(es.U(i, j) - paper(i, j) / 2.0) > 1e-12)
          return std::pair{false, std::string("eigenbasis does not match the reference chart")};

    std::mt19937_64 rng(seed + 42);
    std::uniform_real_distribution<double> box(-1.5, 1.5);
    for (int trial = 0; trial < 25; ++trial) {
      const double a = box(rng), b = box(rng), c = box(rng), d = box(rng);
      const Matrix<double> emb = chart_embed(es, Matrix<double>{{a, b}, {c, d}});
      // displayed chart matrix, rows scaled by 2
      const Matrix<double> display{{r2 * a, 1 - a + b, r2 - r2 * b, 1 + a + b},
                                   {-r2 + r2 * c, -1 - c + d, -r2 * d, 1 + c + d}};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j)
          if (std::fabs(2 * emb(i, j) - display(i, j)) > 1e-12)
            return std::pair{false, std::string("chart_embed disagrees with displayed matrix")};
      // displayed Plücker polynomials (for the norm-2 basis; embed gives 1/4)
      const auto p = plucker(emb, Normalization::Raw);
      const double common = a * d - b * c;
      const std::map<std::string, double> expect{
          {"1,2", r2 * (1 - 2 * a + b - c + common)}, {"2,3", r2 * (1 - 2 * d - b + c + common)},
          {"3,4", r2 * (1 + 2 * d - b + c + common)}, {"1,4", r2 * (1 + 2 * a + b - c + common)},
          {"1,3", 2 * (1 - b - c - a * d + b * c)},   {"2,4", 2 * (1 + b + c - a * d + b * c)}};
      for (const auto& [key, val] : expect)
        if (std::fabs(4 * p.at(subset_from_key(4, key)) - val) > 1e-11)
          return std::pair{false, "Plücker polynomial mismatch at " + key};
      // inverse formulas
      const double d12 = p.at({1, 2}), d23 = p.at({2, 3}), d34 = p.at({3, 4});
      const double d14 = p.at({1, 4}), d13 = p.at({1, 3}), d24 = p.at({2, 4});
      const double delta = d12 + d23 + d34 + d14 + r2 * d13 + r2 * d24;
      const double ia = (2 * d14 - 2 * d12) / delta;
      const double ib = (d12 - d23 - d34 + d14 - r2 * d13 + r2 * d24) / delta;
      const double id = (2 * d34 - 2 * d23) / delta;
      const double ic = (-d12 + d23 + d34 - d14 - r2 * d13 + r2 * d24) / delta;
      if (std::fabs(ia - a) > 1e-10 || std::fabs(ib - b) > 1e-10 || std::fabs(ic - c) > 1e-10 ||
          std::fabs(id - d) > 1e-10)
        return std::pair{false, std::string("inverse chart formulas disagree")};
      const auto inv = chart_invert(es, emb);
      if (std::fabs(inv(0, 0) - a) + std::fabs(inv(0, 1) - b) + std::fabs(inv(1, 0) - c) +
              std::fabs(inv(1, 1) - d) > 1e-9)
        return std::pair{false, std::string("chart_invert disagrees with coordinates")};
    }
    // zero-dimensional cells: chart coordinates of the coordinate subspaces
    std::vector<std::array<double, 4>> expect_cells{{-2, 1, -1, 0}, {0, -1, 1, -2}, {0, -1, 1, 2},
                                                    {2, 1, -1, 0},  {0, -1, -1, 0}, {0, 1, 1, 0}};
    std::vector<std::array<double, 4>> got;
    for (long long sel = 0; sel < 6; ++sel) {
      const auto m = sample_point_boundary_coordinate<double>(2, 4, sel);
      const auto a = chart_invert(tau_eigensystem(2, 4), m);
      got.push_back({a(0, 0), a(0, 1), a(1, 0), a(1, 1)});
    }
    for (const auto& want : expect_cells) {
      bool found = false;
      for (const auto& g : got) {
        double diff = 0;
        for (int i = 0; i < 4; ++i) diff = std::max(diff, std::fabs(g[i] - want[i]));
        if (diff < 1e-9) { found = true; break; }
      }
      if (!found) return std::pair{false, std::string("missing zero cell in chart coordinates")};
    }
    return std::pair{true, std::string("worked Gr(2,4) chart reproduced")};
  }});

  cases.push_back({"gr.flow.consistency", {"flow_grassmann", "flow_chart", "chart_invert"}, [seed] {
    std::mt19937_64 rng(seed + 3);
    std::uniform_real_distribution<double> tdist(-1.0, 1.0);
    for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 6}}) {
      const auto es = tau_eigensystem(k, n);
      for (int trial = 0; trial < 30; ++trial) {
        const auto m = sample_point_tp_vandermonde<double>(k, n, seed + trial * 13 + n);
        const double t = tdist(rng);
        const auto lhs = chart_invert(es, flow_grassmann(es, t, m));
        const auto rhs = flow_chart(es, t, chart_invert(es, m));
        if (max_abs_diff_mat(lhs, rhs) > 1e-8)
          return std::pair{false, std::string("chart and Grassmann flows disagree")};
      }
    }
    return std::pair{true, std::string("flows agree through the chart")};
  }});

  cases.push_back({"gr.flow.boundary_positivity",
                   {"flow_grassmann", "classify_positivity", "sample_point"}, [tol] {
    for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}}) {
      const auto es = tau_eigensystem(k, n);
      for (long long sel = 0; sel < binomial(n, k); ++sel) {
        const auto m = sample_point_boundary_coordinate<double>(k, n, sel);
        const auto fwd = classify_positivity(plucker(flow_grassmann(es, 0.5, m)), tol);
        if (fwd.kind != Positivity::TotallyPositive || fwd.margin <= 1e-6)
          return std::pair{false, std::string("forward flow did not make the point TP")};
        const auto bwd = classify_positivity(plucker(flow_grassmann(es, -0.05, m)), tol);
        if (bwd.kind != Positivity::NotTNN)
          return std::pair{false, std::string("backward flow kept a boundary point TNN")};
      }
    }
    return std::pair{true, std::string("exp(t tau) pushes the boundary inside for t > 0")};
  }});

  cases.push_back({"gr.flow.axioms", {"flow_chart", "verify_flow_axioms"}, [seed, tol] {
    const auto spec = make_chart_flow_spec(tau_eigensystem(2, 4), tol);
    const auto rep = verify_flow_axioms(spec, 200, {0.1, 0.5, 1.0, 2.0}, tol, seed);
    return std::pair{rep.pass(tol), rep.summary()};
  }});

  cases.push_back({"gr.shift.expansion", {"shift_plucker_expansion", "plucker"}, [seed] {
    // k = 1: the shifted coordinates are Delta_i + t Delta_{i+1 mod n}
    const auto m1 = sample_point_generic<Rat>(1, 5, seed + 77);
    const Rat t13(1, 3);
    const auto shifted = shift_plucker_expansion(t13, m1);
    const auto base = plucker(m1, Normalization::Raw);
    for (int i = 1; i <= 5; ++i) {
      const Rat want = base.at({i}) + t13 * base.at({i % 5 + 1});
      if (shifted.at({i}) != want)
        return std::pair{false, std::string("k=1 shift expansion mismatch")};
    }
    // k = 2: the epsilon-sum route is asserted against the minors inside the
    // operation; feed it random rational points
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = sample_point_generic<Rat>(2, 4, seed + trial);
      try {
        shift_plucker_expansion(t13, m);
      } catch (const std::invalid_argument&) {
        continue;  // rank-deficient draw
      }
    }
    return std::pair{true, std::string("both routes agree exactly")};
  }});

  cases.push_back({"gr.flow.first_order", {"flow_grassmann", "plucker"}, [seed] {
    double worst = 0;
    for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}}) {
      const auto m = sample_point_tp_vandermonde<double>(k, n, seed + n);
      const auto base = plucker(m, Normalization::Raw);
      const auto target = plucker_raise_sum(base);
      auto fd = [&](double t) {
        const auto shifted = plucker(flow_shift_only(k, n, t, m), Normalization::Raw);
        std::vector<double> d(shifted.coords.size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = (shifted.coords[i] - base.coords[i]) / t;
        return d;
      };
      const auto f1 = fd(1e-4), f2 = fd(1e-5);
      double scale = 0;
      for (double v : target) scale = std::max(scale, std::fabs(v));
      for (size_t i = 0; i < f1.size(); ++i) {
        const double richardson = (10 * f2[i] - f1[i]) / 9;
        worst = std::max(worst, std::fabs(richardson - target[i]) / scale);
      }
    }
    return std::pair{worst < 1e-5, "Richardson first-order rel err = " + fmt(worst)};
  }});
}

// --------------------------------------------------------------- flow suite

void add_flow_cases(std::vector<PendingCase>& cases, uint64_t seed, double tol) {
  cases.push_back({"flow.axioms.diagonal", {"verify_flow_axioms"}, [seed, tol] {
    const auto rep = verify_flow_axioms(make_diagonal_toy_flow(), 300, {0.25, 1.0, 3.0}, tol, seed);
    return std::pair{rep.pass(tol), rep.summary()};
  }});

  cases.push_back({"flow.axioms.identity_rejected", {"verify_flow_axioms"}, [seed, tol] {
    const auto rep = verify_flow_axioms(make_identity_nonflow(2), 100, {0.5, 1.0}, tol, seed);
    return std::pair{!rep.pass(tol) && rep.contraction_slack >= 0, rep.summary()};
  }});

  cases.push_back({"flow.time_to_radius.closed_form", {"time_to_radius"}, [] {
    const auto spec = make_diagonal_toy_flow();
    const double e = std::exp(1.0);
    const double t1 = time_to_radius(spec, {e, 0}, 1.0, 1e-12);
    const double t2 = time_to_radius(spec, {0, e * e}, 1.0, 1e-12);
    const double t3 = time_to_radius(spec, {0.5, 0}, 0.5, 1e-12);
    const double worst =
        std::max({std::fabs(t1 - 1), std::fabs(t2 - 1), std::fabs(t3 - 0)});
    return std::pair{worst < 1e-9, "max |t_r error| = " + fmt(worst)};
  }});

  cases.push_back({"flow.time_to_boundary.disk", {"time_to_boundary"}, [] {
    const auto spec = make_diagonal_toy_flow();
    const double td = time_to_boundary(spec, {std::exp(-1.0), 0}, 1e-12);
    if (std::fabs(td + 1) > 1e-9) return std::pair{false, "t_boundary(1/e,0) = " + fmt(td)};
    const double tb = time_to_boundary(spec, {1.0, 0}, 1e-12);
    if (tb != 0) return std::pair{false, std::string("boundary point should give 0")};
    // deep interior point: exit exists and lands on the boundary band
    const double tdeep = time_to_boundary(spec, {1e-6, 0}, 1e-12);
    if (!(tdeep < -10)) return std::pair{false, std::string("deep point exited too soon")};
    const auto exit_cls = spec.region(spec.flow(tdeep, {1e-6, 0}));
    if (exit_cls == Region::Outside)
      return std::pair{false, std::string("claimed boundary time is outside")};
    return std::pair{true, std::string("disk exit times match closed forms")};
  }});

  cases.push_back({"flow.ballmap.disk_roundtrip",
                   {"retract_to_ball", "extend_from_ball"}, [seed] {
    const auto spec = make_diagonal_toy_flow();
    std::mt19937_64 rng(seed + 5);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    const double r = 0.3;
    double worst = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Point p{u(rng), u(rng)};
      if (spec.norm(p) >= 0.999 || spec.norm(p) < 1e-3) continue;
      const auto alpha = retract_to_ball(spec, p, r, 1e-12);
      const auto back = extend_from_ball(spec, alpha.image, r, 1e-12);
      worst = std::max(worst, max_abs_diff(back.image, p));
      Point q{0.6 * r * u(rng), 0.6 * r * u(rng)};
      if (spec.norm(q) < 1e-3) continue;
      const auto beta = extend_from_ball(spec, q, r, 1e-12);
      const auto fwd = retract_to_ball(spec, beta.image, r, 1e-12);
      worst = std::max(worst, max_abs_diff(fwd.image, q));
    }
    return std::pair{worst < 1e-8, "max round-trip error = " + fmt(worst)};
  }});

  cases.push_back({"flow.ballmap.gr24", {"retract_to_ball", "extend_from_ball",
                                         "time_to_radius", "time_to_boundary"}, [seed, tol] {
    const auto es = tau_eigensystem(2, 4);
    const auto spec = make_chart_flow_spec(es, tol);
    const double r = 0.1;
    double worst = 0;
    // interior samples through the chart
    for (int trial = 0; trial < 25; ++trial) {
      const auto m = sample_point_tp_vandermonde<double>(2, 4, seed + trial);
      const auto a = chart_invert(es, m);
      Point p;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p.push_back(a(i, j));
      const auto alpha = retract_to_ball(spec, p, r, 1e-10);
      if (spec.norm(alpha.image) > r + 1e-8)
        return std::pair{false, std::string("alpha image left the ball")};
      const auto back = extend_from_ball(spec, alpha.image, r, 1e-10);
      worst = std::max(worst, max_abs_diff(back.image, p));
    }
    // boundary points map onto the sphere of radius r
    for (long long sel = 0; sel < 6; ++sel) {
      const auto m = sample_point_boundary_coordinate<double>(2, 4, sel);
      const auto a = chart_invert(es, m);
      Point p;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p.push_back(a(i, j));
      const auto alpha = retract_to_ball(spec, p, r, 1e-10);
      worst = std::max(worst, std::fabs(spec.norm(alpha.image) - r));
      if (std::fabs(alpha.t_boundary) > 1e-8)
        return std::pair{false, std::string("boundary point has nonzero t_boundary")};
    }
    return std::pair{worst < 1e-6, "max ballmap error = " + fmt(worst)};
  }});

  cases.push_back({"flow.monotone_and_limits", {"verify_flow_axioms"}, [seed] {
    const auto spec = make_diagonal_toy_flow();
    std::mt19937_64 rng(seed + 9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
      Point p{u(rng), u(rng)};
      if (spec.norm(p) < 1e-6) continue;
      double prev = spec.norm(p);
      for (double t : {0.2, 0.7, 1.5, 3.0}) {
        const double cur = spec.norm(spec.flow(t, p));
        if (!(cur < prev)) return std::pair{false, std::string("norm not strictly decreasing")};
        prev = cur;
      }
      if (!(spec.norm(spec.flow(40.0, p)) < 1e-6))
        return std::pair{false, std::string("forward limit not reached")};
      if (!(spec.norm(spec.flow(-40.0, p)) > 1e6))
        return std::pair{false, std::string("backward blow-up not reached")};
    }
    return std::pair{true, std::string("monotone decay and both limits sampled")};
  }});
}

// ----------------------------------------------------------------- u suite

void add_u_cases(std::vector<PendingCase>& cases, uint64_t seed, double tol) {
  cases.push_back({"u.a_flow.n3_formula", {"a_flow"}, [seed] {
    std::mt19937_64 rng(seed + 21);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5), tnum(1, 9);
    for (int trial = 0; trial < 20; ++trial) {
      UnipotentMatrix<Rat> x(3);
      const Rat p(num(rng), den(rng)), q(num(rng), den(rng)), r(num(rng), den(rng));
      x.x(1, 2) = p;
      x.x(1, 3) = q;
      x.x(2, 3) = r;
      const Rat t(tnum(rng), den(rng));
      const auto y = a_flow(t, x);
      const Rat e12 = (t + p - 1) / t;
      const Rat e23 = (t + r - 1) / t;
      const Rat e13 = (t * t + (2 * r - 2) * t + 2 * q - 2 * r + 1) / (2 * t * t);
      if (y.x(1, 2) != e12 || y.x(2, 3) != e23 || y.x(1, 3) != e13)
        return std::pair{false, std::string("n=3 trajectory formula mismatch")};
    }
    return std::pair{true, std::string("n=3 closed-form trajectory, exact")};
  }});

  cases.push_back({"u.a_flow.exp_e_fixed", {"a_flow"}, [] {
    for (int n = 2; n <= 6; ++n) {
      const auto e = UnipotentMatrix<Rat>::exp_e(n);
      for (const Rat& t : {Rat(2), Rat(1, 2), Rat(7, 3)})
        if (!(a_flow(t, e) == e))
          return std::pair{false, std::string("exp(e) moved under a(t)")};
    }
    return std::pair{true, std::string("exp(e) fixed for n <= 6")};
  }});

  cases.push_back({"u.a_flow.group_law", {"a_flow", "sample_v_tnn"}, [seed] {
    std::mt19937_64 rng(seed + 23);
    std::uniform_int_distribution<int> num(1, 9), den(1, 4);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + trial % 4;
      const auto x = sample_v_tnn<Rat>(n, seed + trial);
      const Rat s(num(rng), den(rng)), t(num(rng), den(rng));
      const auto lhs = a_flow(s, a_flow(t, x));
      const auto rhs = a_flow(Rat(s * t), x);
      if (!(lhs == rhs)) return std::pair{false, std::string("a(s)a(t) != a(st) exactly")};
      ++checked;
    }
    return std::pair{true, std::to_string(checked) + " exact group-law checks, n <= 5"};
  }});

  cases.push_back({"u.b_coords.values", {"b_coords", "a_flow"}, [seed] {
    const Rat c(2);
    for (int n = 2; n <= 5; ++n) {
      const auto zero = b_coords(UnipotentMatrix<Rat>::exp_e(n), c);
      if (zero.norm_inf() != 0) return std::pair{false, std::string("b(exp(e)) != 0")};
    }
    std::mt19937_64 rng(seed + 31);
    std::uniform_int_distribution<int> num(-4, 6), den(1, 4), tnum(1, 9);
    for (int trial = 0; trial < 20; ++trial) {
      UnipotentMatrix<Rat> x(3);
      const Rat p(num(rng), den(rng)), q(num(rng), den(rng)), r(num(rng), den(rng));
      x.x(1, 2) = p;
      x.x(1, 3) = q;
      x.x(2, 3) = r;
      const Rat t(tnum(rng), den(rng));
      const auto b = b_coords(a_flow(t, x), c);
      if (b.b(1, 2) != (p - 1) / (c * t) || b.b(2, 3) != (r - 1) / (c * t) ||
          b.b(1, 3) != ((2 * r - 2) * t + 2 * q - 2 * r + 1) / (c * c * t * t))
        return std::pair{false, std::string("n=3 b-coordinate formulas mismatch")};
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = sample_v_tnn<Rat>(4, seed + 100 + trial);
      if (b_coords(x, c).superdiagonal_sum() != 0)
        return std::pair{false, std::string("superdiagonal b-sum nonzero on V")};
    }
    return std::pair{true, std::string("b-coordinate identities, exact")};
  }});

  cases.push_back({"u.classify.cases", {"classify_u_positivity"}, [tol] {
    UnipotentMatrix<Rat> id(3);
    if (classify_u_positivity(id, tol) != UPositivity::Boundary)
      return std::pair{false, std::string("identity should be boundary TNN")};
    for (int n = 2; n <= 4; ++n)
      if (classify_u_positivity(UnipotentMatrix<Rat>::exp_e(n), tol) != UPositivity::TotallyPositive)
        return std::pair{false, std::string("exp(e) should be in U_{>0}")};
    UnipotentMatrix<Rat> bad(3);
    bad.x(1, 2) = -1;
    if (classify_u_positivity(bad, tol) != UPositivity::NotTNN)
      return std::pair{false, std::string("negative entry should not be TNN")};
    return std::pair{true, std::string("boundary, positive, and negative cases")};
  }});

  cases.push_back({"u.sample.valid", {"sample_v_tnn", "classify_u_positivity"}, [seed, tol] {
    const auto one = sample_v_tnn<Rat>(2, seed);
    if (one.x(1, 2) != 1) return std::pair{false, std::string("n=2 sample must have x12 = 1")};
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + trial % 4;
      const auto x = sample_v_tnn<Rat>(n, seed + 41 * trial);
      if (!x.in_v_slice()) return std::pair{false, std::string("sample left the V slice")};
      if (classify_u_positivity(x, tol) == UPositivity::NotTNN)
        return std::pair{false, std::string("sample not TNN")};
      Rat bound(1);
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          Rat cap(1);
          for (int d = 0; d < j - i; ++d) cap *= (n - 1);
          if (x.x(i, j) < 0 || x.x(i, j) > cap)
            return std::pair{false, std::string("entry bound violated")};
        }
      }
      (void)bound;
    }
    return std::pair{true, std::string("V membership, TNN, entry bounds")};
  }});

  cases.push_back({"u.lemma.flow_descent", {"a_flow", "b_coords", "classify_u_positivity"},
                   [seed, tol] {
    const std::vector<Rat> cs{Rat(3, 2), Rat(2), Rat(4)};
    const std::vector<Rat> grid{Rat(1, 2), Rat(1), Rat(2), Rat(4), Rat(8)};
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 2 + trial % 3;
      const auto x = sample_v_tnn<Rat>(n, seed + trial);
      if (x == UnipotentMatrix<Rat>::exp_e(n)) continue;
      if (classify_u_positivity(a_flow(Rat(2), x), tol) != UPositivity::TotallyPositive)
        return std::pair{false, std::string("a(2) x not totally positive")};
      for (const Rat& c : cs) {
        Rat prev(-1);
        bool first = true;
        for (const Rat& t : grid) {
          const Rat cur = b_coords(a_flow(t, x), c).norm_inf();
          if (!first && !(cur < prev))
            return std::pair{false, std::string("b-norm not strictly decreasing (c=" +
                                                 rat_to_string(c) + ")")};
          prev = cur;
          first = false;
        }
      }
    }
    return std::pair{true, std::string("descent and positivity, c-independent verdicts")};
  }});

  cases.push_back({"u.flow.axioms", {"verify_flow_axioms"}, [seed, tol] {
    const auto spec = make_unipotent_flow_spec(3, 2.0);
    const auto rep = verify_flow_axioms(spec, 150, {0.2, 0.7, 1.5}, tol, seed);
    return std::pair{rep.pass(tol), rep.summary()};
  }});
}

// --------------------------------------------------------------- amp suite

void add_amp_cases(std::vector<PendingCase>& cases, uint64_t seed, double tol) {
  cases.push_back({"amp.spec.construction", {"build_spec"}, [] {
    const auto spec = build_spec(1, 2, 4);
    const double h = 0.5, r = 1.0 / std::sqrt(2.0);
    const Matrix<double> z0{{h, h, h, h}, {r, 0, -r, 0}, {0, r, 0, -r}};
    if (max_abs_diff_mat(spec.z0, z0) > 1e-12)
      return std::pair{false, std::string("Z0 for (1,2,4) is off")};
    for (const auto& [k, m, n] : std::vector<std::tuple<int, int, int>>{{2, 2, 5}, {1, 2, 3}, {2, 2, 6}}) {
      const auto s = build_spec(k, m, n);
      for (const auto& sub : k_subsets(n, k + m))
        if (!(s.z0.columns(sub).determinant() > 0))
          return std::pair{false, std::string("Z0 minor not positive")};
    }
    bool threw = false;
    try {
      build_spec(1, 1, 4);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    return std::pair{threw, std::string("Z0 construction and minor positivity")};
  }});

  cases.push_back({"amp.map.example", {"amplituhedron_map", "chart_embed"}, [] {
    const auto spec = build_spec(1, 2, 4);
    const double r2 = std::sqrt(2.0);
    // center
    const auto center = amplituhedron_map(spec, spec.es.top_rows(1));
    if (std::fabs(center(0, 0)) + std::fabs(center(0, 1)) > 1e-12)
      return std::pair{false, std::string("center does not map to the origin")};
    // tetrahedron vertices -> square vertices
    const std::vector<std::array<double, 3>> verts{{0, r2, -1}, {0, -r2, -1}, {r2, 0, 1}, {-r2, 0, 1}};
    const std::vector<std::array<double, 2>> want{{0, r2}, {0, -r2}, {r2, 0}, {-r2, 0}};
    for (size_t i = 0; i < verts.size(); ++i) {
      const Matrix<double> a{{verts[i][0], verts[i][1], verts[i][2]}};
      const auto img = amplituhedron_map(spec, chart_embed(spec.es, a));
      if (std::fabs(img(0, 0) - want[i][0]) + std::fabs(img(0, 1) - want[i][1]) > 1e-9)
        return std::pair{false, std::string("vertex image mismatch")};
    }
    return std::pair{true, std::string("square example reproduced")};
  }});

  cases.push_back({"amp.diagram.commutes", {"amplituhedron_map", "chart_project", "chart_embed"},
                   [seed] {
    double worst = 0;
    for (const auto& [k, m, n] : std::vector<std::tuple<int, int, int>>{
             {1, 2, 4}, {1, 2, 5}, {2, 2, 5}, {2, 2, 6}}) {
      const auto spec = build_spec(k, m, n);
      for (int trial = 0; trial < 60; ++trial) {
        const auto mat = sample_point_tp_vandermonde<double>(k, n, seed + 17 * trial + n);
        const auto a = chart_invert(spec.es, mat);
        const auto lhs = amplituhedron_map(spec, chart_embed(spec.es, a));
        const auto rhs = chart_project(a, m);
        worst = std::max(worst, max_abs_diff_mat(lhs, rhs));
      }
    }
    return std::pair{worst < 1e-9, "max diagram defect = " + fmt(worst)};
  }});

  cases.push_back({"amp.flow.equivariance", {"flow_m", "chart_project", "verify_flow_axioms"},
                   [seed, tol] {
    const auto spec = build_spec(2, 2, 5);
    std::mt19937_64 rng(seed + 61);
    std::uniform_real_distribution<double> box(-2, 2), tdist(-1, 1);
    for (int trial = 0; trial < 40; ++trial) {
      Matrix<double> a(2, 3);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = box(rng);
      const double t = tdist(rng);
      const auto lhs = flow_m(spec, t, chart_project(a, 2));
      const auto rhs = chart_project(flow_chart(spec.es, t, a), 2);
      if (max_abs_diff_mat(lhs, rhs) > 1e-12)
        return std::pair{false, std::string("flow does not commute with the projection")};
    }
    const auto rep = verify_flow_axioms(make_amp_flow_spec(spec), 150, {0.2, 1.0, 2.0}, tol, seed);
    return std::pair{rep.pass(tol), rep.summary()};
  }});

  cases.push_back({"amp.hull.square", {"cyclic_polytope_oracle", "build_spec"}, [] {
    const auto spec = build_spec(1, 2, 4);
    const auto verts = amplituhedron_vertices(spec);
    const double r2 = std::sqrt(2.0);
    if (cyclic_polytope_oracle(spec, verts, {0, 0}, 1e-9) != HullLocation::Inside)
      return std::pair{false, std::string("origin should be inside")};
    if (cyclic_polytope_oracle(spec, verts, {r2, 0}, 1e-9) != HullLocation::Boundary)
      return std::pair{false, std::string("(sqrt2, 0) should be on the boundary")};
    if (cyclic_polytope_oracle(spec, verts, {2, 2}, 1e-9) != HullLocation::Outside)
      return std::pair{false, std::string("(2,2) should be outside")};
    return std::pair{true, std::string("square membership answers")};
  }});

  cases.push_back({"amp.hull.image_membership",
                   {"cyclic_polytope_oracle", "amplituhedron_map", "flow_m"}, [seed] {
    for (const int n : {4, 5}) {
      const auto spec = build_spec(1, 2, n);
      const auto verts = amplituhedron_vertices(spec);
      for (int trial = 0; trial < 80; ++trial) {
        const auto mat = sample_point_tp_vandermonde<double>(1, n, seed + trial * 7 + n);
        const auto img = amplituhedron_map(spec, mat);
        const std::vector<double> q{img(0, 0), img(0, 1)};
        if (cyclic_polytope_oracle(spec, verts, q, 1e-9) == HullLocation::Outside)
          return std::pair{false, std::string("image sample escaped the hull")};
        const auto flowed = flow_m(spec, 0.5, img);
        const std::vector<double> qf{flowed(0, 0), flowed(0, 1)};
        if (cyclic_polytope_oracle(spec, verts, qf, 1e-9) == HullLocation::Outside)
          return std::pair{false, std::string("flowed image escaped the hull")};
      }
    }
    return std::pair{true, std::string("image and flowed-image membership")};
  }});
}

// ---------------------------------------------------------------- en suite

std::vector<std::vector<std::vector<int>>> brute_force_nc(int n) {
  // all set partitions of the odd labels by restricted growth strings,
  // filtered by the crossing test
  std::vector<int> odds;
  for (int i = 1; i <= 2 * n - 1; i += 2) odds.push_back(i);
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    int blocks = 0;
    for (int v : rgs) blocks = std::max(blocks, v + 1);
    std::vector<std::vector<int>> parts(blocks);
    for (int i = 0; i < n; ++i) parts[rgs[i]].push_back(odds[i]);
    if (is_noncrossing(parts)) {
      for (auto& p : parts) std::sort(p.begin(), p.end());
      std::sort(parts.begin(), parts.end());
      out.push_back(parts);
    }
    // next restricted growth string
    int i = n - 1;
    for (; i > 0; --i) {
      int maxv = 0;
      for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
      if (rgs[i] <= maxv) { ++rgs[i]; break; }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

void add_en_cases(std::vector<PendingCase>& cases, uint64_t seed, double tol, int n_en) {
  const int ncap = std::min(n_en, 5);

  cases.push_back({"en.nc.counts", {"enumerate_nc"}, [ncap] {
    for (int n = 1; n <= 7; ++n)
      if (static_cast<long long>(enumerate_nc(n).size()) != catalan(n))
        return std::pair{false, "count != Catalan at n=" + std::to_string(n)};
    for (int n = 1; n <= ncap; ++n) {
      const auto brute = brute_force_nc(n);
      const auto fast = enumerate_nc(n);
      if (brute.size() != fast.size())
        return std::pair{false, "brute-force oracle disagrees at n=" + std::to_string(n)};
      std::set<std::vector<std::vector<int>>> seen;
      for (const auto& p : fast) seen.insert(p.parts);
      for (const auto& p : brute)
        if (!seen.count(p)) return std::pair{false, std::string("enumeration missed a partition")};
    }
    return std::pair{true, std::string("Catalan counts and brute-force oracle agree")};
  }});

  cases.push_back({"en.kreweras.properties", {"kreweras", "enumerate_nc"}, [ncap] {
    const auto s135 = nc_from_string(3, "1,3|5");
    if (kreweras(s135) != std::vector<std::vector<int>>{{2}, {4, 6}})
      return std::pair{false, std::string("complement of 1,3|5 wrong")};
    const auto singles = nc_from_string(3, "1|3|5");
    if (kreweras(singles) != std::vector<std::vector<int>>{{2, 4, 6}})
      return std::pair{false, std::string("complement of singletons wrong")};
    for (int n = 1; n <= ncap; ++n) {
      const auto all = enumerate_nc(n);
      for (const auto& s : all) {
        const auto comp = kreweras(s);
        if (static_cast<int>(s.parts.size() + comp.size()) != n + 1)
          return std::pair{false, std::string("part-count identity violated")};
        // the odd-side complement of the even complement recovers sigma
        if (kreweras_even(n, comp) != s.parts)
          return std::pair{false, std::string("double complement is not the identity")};
      }
      // order reversal on refinement pairs
      for (const auto& a : all)
        for (const auto& b : all) {
          auto refines = [](const NoncrossingPartition& x, const NoncrossingPartition& y) {
            for (const auto& px : x.parts) {
              bool inside = false;
              for (const auto& py : y.parts)
                if (std::includes(py.begin(), py.end(), px.begin(), px.end())) inside = true;
              if (!inside) return false;
            }
            return true;
          };
          if (!refines(a, b)) continue;
          const auto ka = kreweras(a), kb = kreweras(b);
          for (const auto& pb : kb) {
            bool inside = false;
            for (const auto& pa : ka)
              if (std::includes(pa.begin(), pa.end(), pb.begin(), pb.end())) inside = true;
            if (!inside) return std::pair{false, std::string("complement not order-reversing")};
          }
        }
    }
    return std::pair{true, std::string("examples, part counts, involution, order reversal")};
  }});

  cases.push_back({"en.asigma.examples", {"a_sigma"}, [] {
    const auto v = a_sigma(nc_from_string(3, "1,3|5"));
    std::vector<long long> want(static_cast<size_t>(binomial(6, 2)), 0);
    for (const auto& key : {"1,4", "1,6", "3,4", "3,6"})
      want[subset_rank(6, subset_from_key(6, key))] = 1;
    if (v != want) return std::pair{false, std::string("A_{1,3|5} mismatch")};
    const auto singles = a_sigma(nc_from_string(3, "1|3|5"));
    std::vector<long long> want2(want.size(), 0);
    for (const auto& key : {"2,4", "2,6", "4,6"})
      want2[subset_rank(6, subset_from_key(6, key))] = 1;
    if (singles != want2) return std::pair{false, std::string("A_{singletons} mismatch")};
    const auto forced = a_sigma(nc_from_string(1, "1"));
    if (forced != std::vector<long long>{1})
      return std::pair{false, std::string("n=1 vector should be e_emptyset")};
    return std::pair{true, std::string("worked A_sigma vectors, exact")};
  }});

  cases.push_back({"en.sigma_prime.table", {"sigma_prime"}, [] {
    const auto s = nc_from_string(3, "1,3|5");
    const auto singles = nc_from_string(3, "1|3|5");
    const auto one = nc_from_string(3, "1,3,5");
    if (!(sigma_prime(s, 1) == singles && sigma_prime(s, 3) == singles))
      return std::pair{false, std::string("odd refinements wrong")};
    if (!(sigma_prime(s, 2) == s && sigma_prime(s, 5) == s))
      return std::pair{false, std::string("fixed cases wrong")};
    if (!(sigma_prime(s, 4) == one && sigma_prime(s, 6) == one))
      return std::pair{false, std::string("even coarsenings wrong")};
    return std::pair{true, std::string("worked sigma'(i) table")};
  }});

  cases.push_back({"en.ud.example", {"ud_apply", "a_sigma", "sigma_prime"}, [] {
    const auto s = nc_from_string(3, "1,3|5");
    const auto as = a_sigma(s);
    const auto u1 = ud_apply(3, 1, as);
    if (u1 != a_sigma(sigma_prime(s, 1)))
      return std::pair{false, std::string("(u1+d1) A_sigma mismatch")};
    const auto u2 = ud_apply(3, 2, as);
    if (u2 != std::vector<long long>(as.size(), 0))
      return std::pair{false, std::string("(u2+d2) A_sigma should vanish")};
    // raising away from the support is zero
    std::vector<long long> e14(static_cast<size_t>(binomial(6, 2)), 0);
    e14[subset_rank(6, {1, 4})] = 1;
    const auto moved = ud_apply(3, 3, e14);  // 3 not in {1,4}
    if (moved != std::vector<long long>(e14.size(), 0))
      return std::pair{false, std::string("u_i e_I should vanish when i not in I")};
    return std::pair{true, std::string("worked operator actions, exact")};
  }});

  cases.push_back({"en.lemma_ud.exhaustive", {"verify_lemma_ud"}, [ncap] {
    for (int n = 1; n <= ncap; ++n) {
      const auto rep = verify_lemma_ud(n);
      if (!rep.pass())
        return std::pair{false, "failures at n=" + std::to_string(n) + ": " + rep.failures.front()};
    }
    return std::pair{true, std::string("all cases pass exactly up to n=") + std::to_string(ncap)};
  }});

  cases.push_back({"en.phi.tangent_to_h", {"phi_apply", "h_subspace", "a_sigma"}, [ncap] {
    for (int n = 1; n <= std::min(ncap, 4); ++n) {
      const auto h = h_subspace(n);
      for (const auto& s : h.sigmas) {
        const auto phi = phi_apply(n, a_sigma(s));
        std::vector<Rat> v(phi.begin(), phi.end());
        if (!h.contains_exact(v))
          return std::pair{false, std::string("Phi(A_sigma) left the span exactly")};
      }
    }
    // the worked n=3 combination: Phi(A_sigma) = 2 A_singletons + 2 A_oneblock
    const auto s = nc_from_string(3, "1,3|5");
    auto want = a_sigma(nc_from_string(3, "1|3|5"));
    const auto one = a_sigma(nc_from_string(3, "1,3,5"));
    for (size_t i = 0; i < want.size(); ++i) want[i] = 2 * want[i] + 2 * one[i];
    if (phi_apply(3, a_sigma(s)) != want)
      return std::pair{false, std::string("worked Phi combination mismatch")};
    return std::pair{true, std::string("Phi preserves span(A_sigma) exactly")};
  }});

  cases.push_back({"en.response.closed_forms", {"response_matrix"}, [seed] {
    // single edge
    {
      ResistorNetwork net;
      net.boundary = {1, 2};
      net.edges = {{1, 2, Rat(5, 3)}};
      const auto lam = response_matrix(net);
      if (lam(0, 0) != Rat(5, 3) || lam(0, 1) != Rat(-5, 3))
        return std::pair{false, std::string("single edge response wrong")};
    }
    // series a - interior - b
    {
      ResistorNetwork net;
      net.boundary = {1, 2};
      net.edges = {{1, 9, Rat(3)}, {9, 2, Rat(6)}};
      const auto lam = response_matrix(net);
      if (lam(0, 0) != Rat(2) || lam(0, 1) != Rat(-2))
        return std::pair{false, std::string("series reduction ab/(a+b) wrong")};
    }
    // 3-star with conductances (a, b, c)
    {
      ResistorNetwork net;
      net.boundary = {1, 2, 3};
      const Rat a(2), b(3), c(5);
      net.edges = {{1, 7, a}, {2, 7, b}, {3, 7, c}};
      const auto lam = response_matrix(net);
      if (lam(0, 1) != -(a * b) / (a + b + c))
        return std::pair{false, std::string("star off-diagonal wrong")};
      if (lam(0, 2) != -(a * c) / (a + b + c) || lam(1, 2) != -(b * c) / (a + b + c))
        return std::pair{false, std::string("star other entries wrong")};
    }
    // random networks: symmetry and zero row sums, exact
    std::mt19937_64 rng(seed + 83);
    std::uniform_int_distribution<int> num(1, 9), den(1, 4), extra(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
      ResistorNetwork net;
      net.boundary = {1, 2, 3};
      const int interior = 4 + extra(rng);
      for (int v = 4; v <= interior; ++v)
        net.edges.push_back({v - 3, v, Rat(num(rng), den(rng))});
      for (int b = 1; b <= 3; ++b) net.edges.push_back({b, interior, Rat(num(rng), den(rng))});
      const auto lam = response_matrix(net);
      for (int i = 0; i < 3; ++i) {
        Rat row(0);
        for (int j = 0; j < 3; ++j) {
          row += lam(i, j);
          if (lam(i, j) != lam(j, i)) return std::pair{false, std::string("response not symmetric")};
        }
        if (row != 0) return std::pair{false, std::string("row sum nonzero")};
      }
    }
    // floating interior is an error
    bool threw = false;
    try {
      ResistorNetwork net;
      net.boundary = {1, 2};
      net.edges = {{1, 2, Rat(1)}, {3, 4, Rat(1)}};
      response_matrix(net);
    } catch (const std::runtime_error&) {
      threw = true;
    }
    return std::pair{threw, std::string("closed forms and exact structure")};
  }});

  cases.push_back({"en.xn.search", {"xn_search", "h_subspace"}, [seed, tol] {
    const auto r2 = xn_search(2, seed, 1e-10);
    if (!r2.success || r2.relation_residual > 1e-12)
      return std::pair{false, std::string("n=2 search should be immediate")};
    const auto r3 = xn_search(3, seed, 1e-10);
    if (!r3.success)
      return std::pair{false, "n=3 search failed: " + r3.message};
    if (r3.relation_residual > 1e-10 || r3.h_residual > 1e-10)
      return std::pair{false, "residuals too large: rel=" + fmt(r3.relation_residual) +
                                  " h=" + fmt(r3.h_residual)};
    // flow invariance of H and positivity along the flow
    const auto es = tau_eigensystem(2, 6);
    const auto h = h_subspace(3);
    for (double t : {0.25, 0.5, 1.0}) {
      const auto flowed = flow_grassmann(es, t, r3.matrix);
      auto p = plucker(flowed, Normalization::Raw);
      double norm = 0;
      for (double v : p.coords) norm += v * v;
      norm = std::sqrt(norm);
      for (double& v : p.coords) v /= norm;
      if (h.residual(p.coords) > 1e-8)
        return std::pair{false, std::string("flow left the subspace H")};
      if (r3.tnn) {
        const auto cls = classify_positivity(p, tol);
        if (cls.kind != Positivity::TotallyPositive)
          return std::pair{false, std::string("flowed TNN point not totally positive")};
      }
    }
    // first-order expansion via Phi at the found point (central difference)
    {
      const double t = 1e-4;
      const auto plus = plucker(flow_grassmann(es, t, r3.matrix), Normalization::Raw);
      const auto minus = plucker(flow_grassmann(es, -t, r3.matrix), Normalization::Raw);
      const auto base = plucker(r3.matrix, Normalization::Raw);
      const auto want = phi_apply(3, base.coords);
      double scale = 0, worst = 0;
      for (double v : want) scale = std::max(scale, std::fabs(v));
      for (size_t i = 0; i < want.size(); ++i) {
        const double fd = (plus.coords[i] - minus.coords[i]) / (2 * t);
        worst = std::max(worst, std::fabs(fd - want[i]) / scale);
      }
      if (worst > 1e-4)
        return std::pair{false, "Phi first-order rel err = " + fmt(worst)};
    }
    return std::pair{true, "converged, rel=" + fmt(r3.relation_residual) +
                               " h=" + fmt(r3.h_residual) + (r3.tnn ? " (TNN)" : "")};
  }});
}

// ------------------------------------------------------------- plumbing

void add_io_cases(std::vector<PendingCase>& cases, uint64_t seed) {
  cases.push_back({"io.codec.roundtrip", {"io_codec"}, [seed] {
    const auto m = sample_point_generic<Rat>(2, 4, seed + 3);
    const auto back = matrix_from_json(matrix_to_json(m));
    if (!back.is_rational() || !(back.rational() == m))
      return std::pair{false, std::string("rational matrix round trip not exact")};
    Matrix<Rat> third(1, 1);
    third(0, 0) = Rat(1, 3);
    const auto b2 = matrix_from_json(matrix_to_json(third));
    if (b2.rational()(0, 0) != Rat(1, 3))
      return std::pair{false, std::string("1/3 did not survive the round trip")};
    const auto p = plucker(sample_point_generic<Rat>(2, 4, seed + 5));
    const auto pj = plucker_to_json(p);
    const auto pv = plucker_from_json(pj);
    if (!pv.is_rational() || pv.rational().coords != p.coords)
      return std::pair{false, std::string("Plücker round trip not exact")};
    bool threw = false;
    try {
      Json bad = pj;
      bad["coords"] = Json::object({{"2,1", "1"}});
      plucker_from_json(bad);
    } catch (const std::invalid_argument& e) {
      threw = std::string(e.what()).find("2,1") != std::string::npos;
    }
    return std::pair{threw, std::string("round trips exact; malformed key rejected by name")};
  }});

  cases.push_back({"io.trajectory.export", {"trajectory_export", "run_verify_suite"}, [] {
    // constant trajectory at the fixed point
    std::ostringstream gr;
    trajectory_gr(tau_eigensystem(2, 4), Matrix<double>(2, 2), {0.0, 0.5, 1.0}, gr);
    std::istringstream lines(gr.str());
    std::string header, row0, row1;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::getline(lines, row1);
    if (header.find("min_plucker") == std::string::npos)
      return std::pair{false, std::string("missing trajectory header")};
    if (row0.substr(row0.find(',')) != row1.substr(row1.find(',')))
      return std::pair{false, std::string("fixed point trajectory should be constant")};
    // unipotent columns against the closed form at c = 2
    UnipotentMatrix<double> x(3);  // (p, q, r) = (0, 0, 0)
    std::ostringstream uu;
    trajectory_u(x, 2.0, {1.0, 2.0, 4.0}, uu);
    std::istringstream ul(uu.str());
    std::getline(ul, header);
    for (double t : {1.0, 2.0, 4.0}) {
      std::string row;
      std::getline(ul, row);
      std::vector<double> vals;
      std::stringstream rs(row);
      std::string tok;
      while (std::getline(rs, tok, ',')) vals.push_back(std::stod(tok));
      // columns: t, b12, b13, b23, norm, min_minor
      const double b12 = -1 / (2 * t);
      const double b13 = (-2 * t + 1) / (4 * t * t);
      if (std::fabs(vals[1] - b12) > 1e-12 || std::fabs(vals[2] - b13) > 1e-12 ||
          std::fabs(vals[3] - b12) > 1e-12)
        return std::pair{false, std::string("unipotent trajectory columns mismatch")};
    }
    return std::pair{true, std::string("CSV exports match closed forms")};
  }});
}

}  // namespace

int VerifyReport::failures() const {
  int f = 0;
  for (const auto& c : cases)
    if (!c.pass) ++f;
  return f;
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["tol"] = tol;
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : cases) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["pass"] = c.pass;
    cj["detail"] = c.detail;
    cj["ops"] = c.ops;
    j["cases"].push_back(cj);
  }
  j["failures"] = failures();
  j["coverage"] = {{"complete", coverage_complete}, {"missing", missing_ops}};
  j["wall_ms"] = wall_ms;
  return j;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites{"gr", "flow", "u", "amp", "en", "all"};
  return suites;
}

const std::vector<std::string>& all_op_names() {
  static const std::vector<std::string> ops{
      "plucker", "classify_positivity", "cauchy_binet", "sample_point",
      "verify_flow_axioms", "time_to_radius", "time_to_boundary", "retract_to_ball",
      "extend_from_ball",
      "build_operators", "tau_eigensystem", "x0_plucker", "chart_embed", "chart_invert",
      "flow_chart", "flow_grassmann", "shift_plucker_expansion",
      "a_flow", "b_coords", "classify_u_positivity", "sample_v_tnn",
      "build_spec", "amplituhedron_map", "chart_project", "flow_m", "cyclic_polytope_oracle",
      "enumerate_nc", "kreweras", "a_sigma", "sigma_prime", "ud_apply", "verify_lemma_ud",
      "phi_apply", "h_subspace", "response_matrix", "xn_search",
      "run_verify_suite", "trajectory_export", "io_codec"};
  return ops;
}

VerifyReport run_verify_suite(const std::string& name, uint64_t seed, double tol, int n_en) {
  bool known = false;
  for (const auto& s : known_suites()) known = known || s == name;
  if (!known) throw std::invalid_argument("unknown suite \"" + name + "\"");

  const auto start = std::chrono::steady_clock::now();
  std::vector<PendingCase> pending;
  if (name == "gr" || name == "all") add_gr_cases(pending, seed, tol);
  if (name == "flow" || name == "all") add_flow_cases(pending, seed, tol);
  if (name == "u" || name == "all") add_u_cases(pending, seed, tol);
  if (name == "amp" || name == "all") add_amp_cases(pending, seed, tol);
  if (name == "en" || name == "all") add_en_cases(pending, seed, tol, n_en);
  if (name == "all") add_io_cases(pending, seed);

  VerifyReport report;
  report.suite = name;
  report.seed = seed;
  report.tol = tol;

  std::vector<std::future<std::pair<bool, std::string>>> futures;
  futures.reserve(pending.size());
  for (const auto& c : pending) {
    futures.push_back(std::async(std::launch::async, [&c] {
      try {
        return c.run();
      } catch (const std::exception& e) {
        return std::pair{false, std::string("exception: ") + e.what()};
      }
    }));
  }
  for (size_t i = 0; i < pending.size(); ++i) {
    VerifyCase vc;
    vc.id = pending[i].id;
    vc.ops = pending[i].ops;
    auto [pass, detail] = futures[i].get();
    vc.pass = pass;
    vc.detail = detail;
    report.cases.push_back(std::move(vc));
  }
  std::sort(report.cases.begin(), report.cases.end(),
            [](const VerifyCase& a, const VerifyCase& b) { return a.id < b.id; });

  if (name == "all") {
    std::set<std::string> covered{"run_verify_suite"};
    for (const auto& c : report.cases)
      for (const auto& op : c.ops) covered.insert(op);
    for (const auto& op : all_op_names())
      if (!covered.count(op)) report.missing_ops.push_back(op);
    report.coverage_complete = report.missing_ops.empty();
  }

  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tpflow
