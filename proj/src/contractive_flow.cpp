#include "tpflow/contractive_flow.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tpflow {

namespace {

Point subtract(const Point& a, const Point& b) {
  Point d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

}  // namespace

std::string AxiomReport::summary() const {
  std::ostringstream os;
  os << "identity=" << identity_violation << " group=" << group_violation
     << " contraction_slack=" << contraction_slack << " samples=" << samples;
  return os.str();
}

AxiomReport verify_flow_axioms(const ContractiveFlowSpec& spec, int samples,
                               const std::vector<double>& t_grid, double /*tol*/,
                               uint64_t seed) {
  AxiomReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-spec.sample_radius, spec.sample_radius);
  for (int s = 0; s < samples; ++s) {
    Point p(spec.dim);
    for (auto& x : p) x = box(rng);
    if (spec.norm(p) == 0) continue;

    rep.identity_violation =
        std::max(rep.identity_violation, spec.norm(subtract(spec.flow(0.0, p), p)));

    for (double t1 : t_grid) {
      const Point ft1 = spec.flow(t1, p);
      for (double t2 : t_grid) {
        const Point lhs = spec.flow(t2, ft1);
        const Point rhs = spec.flow(t1 + t2, p);
        rep.group_violation = std::max(rep.group_violation, spec.norm(subtract(lhs, rhs)));
      }
      if (t1 > 0) {
        const double slack = spec.norm(ft1) - spec.norm(p);
        rep.contraction_slack = std::max(rep.contraction_slack, slack);
      }
    }
  }
  return rep;
}

double time_to_radius(const ContractiveFlowSpec& spec, const Point& p, double r, double tol) {
  if (r <= 0) throw std::invalid_argument("radius must be positive");
  const double n0 = spec.norm(p);
  if (n0 == 0) throw std::invalid_argument("trajectory of the origin never reaches radius r");
  const double cap = 60.0 * spec.time_scale;
  auto g = [&](double t) { return spec.norm(spec.flow(t, p)) - r; };
  double lo = 0, hi = 0;
  if (n0 > r) {
    // norm decays forward; expand hi until below r
    double t = spec.time_scale;
    while (g(t) > 0) {
      t *= 2;
      if (t > cap) throw std::runtime_error("radius not reached within time cap");
    }
    lo = 0;
    hi = t;
  } else if (n0 < r) {
    double t = -spec.time_scale;
    while (g(t) < 0) {
      t *= 2;
      if (-t > cap) throw std::runtime_error("radius not reached within backward time cap");
    }
    lo = t;
    hi = 0;
  } else {
    return 0.0;
  }
  // g is strictly decreasing in t; bisect
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double time_to_boundary(const ContractiveFlowSpec& spec, const Point& p, double tol) {
  if (!spec.region) throw std::logic_error("flow spec has no region oracle");
  const Region at0 = spec.region(p);
  if (at0 == Region::Outside)
    throw std::invalid_argument("point is outside the closure of the region");
  if (at0 == Region::ClosureBoundary) return 0.0;
  const double cap = 60.0 * spec.time_scale;
  double t_out = -spec.time_scale;
  while (spec.region(spec.flow(t_out, p)) != Region::Outside) {
    t_out *= 2;
    if (-t_out > cap)
      throw std::runtime_error("no exit found within backward time cap");
  }
  double t_in = 0.0;
  // maintain region(t_in) != Outside, region(t_out) == Outside
  while (t_in - t_out > tol) {
    const double mid = 0.5 * (t_in + t_out);
    if (spec.region(spec.flow(mid, p)) == Region::Outside) t_out = mid; else t_in = mid;
  }
  return t_in;
}

BallMapResult retract_to_ball(const ContractiveFlowSpec& spec, const Point& p, double r,
                              double tol) {
  BallMapResult res;
  if (spec.norm(p) == 0) {
    res.image = Point(spec.dim, 0.0);
    return res;
  }
  res.t_r = time_to_radius(spec, p, r, tol);
  res.t_boundary = time_to_boundary(spec, p, tol);
  res.image = spec.flow(res.t_r - res.t_boundary, p);
  res.residual = std::fabs(spec.norm(spec.flow(res.t_r, p)) - r);
  return res;
}

BallMapResult extend_from_ball(const ContractiveFlowSpec& spec, const Point& p, double r,
                               double tol) {
  BallMapResult res;
  const double n0 = spec.norm(p);
  if (n0 == 0) {
    res.image = Point(spec.dim, 0.0);
    return res;
  }
  if (n0 > r + tol) throw std::invalid_argument("point lies outside the ball of radius r");
  if (spec.region && spec.region(p) == Region::Outside)
    throw std::invalid_argument("point is outside the closure of the region");
  res.t_r = time_to_radius(spec, p, r, tol);
  res.t_boundary = time_to_boundary(spec, p, tol);
  res.image = spec.flow(res.t_boundary - res.t_r, p);
  res.residual = std::fabs(spec.norm(spec.flow(res.t_r, p)) - r);
  return res;
}

ContractiveFlowSpec make_diagonal_toy_flow(double boundary_tol) {
  ContractiveFlowSpec spec;
  spec.dim = 2;
  spec.flow = [](double t, const Point& p) {
    return Point{std::exp(-t) * p[0], std::exp(-2 * t) * p[1]};
  };
  spec.norm = [](const Point& p) { return std::hypot(p[0], p[1]); };
  spec.region = [boundary_tol](const Point& p) {
    const double n = std::hypot(p[0], p[1]);
    if (n < 1 - boundary_tol) return Region::Interior;
    if (n <= 1 + boundary_tol) return Region::ClosureBoundary;
    return Region::Outside;
  };
  return spec;
}

ContractiveFlowSpec make_identity_nonflow(int dim) {
  ContractiveFlowSpec spec;
  spec.dim = dim;
  spec.flow = [](double, const Point& p) { return p; };
  spec.norm = [](const Point& p) {
    double s = 0;
    for (double x : p) s += x * x;
    return std::sqrt(s);
  };
  return spec;
}

}  // namespace tpflow
