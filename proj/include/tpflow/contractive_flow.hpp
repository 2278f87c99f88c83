#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tpflow {

using Point = std::vector<double>;

enum class Region { Interior, ClosureBoundary, Outside };

/// A contractive flow on R^N together with the norm it contracts and an
/// optional membership oracle for the invariant region Q. The flow axioms
/// (identity, group action, strict norm decay) are never assumed; they are
/// checked by verify_flow_axioms.
struct ContractiveFlowSpec {
  int dim = 0;
  std::function<Point(double, const Point&)> flow;
  std::function<double(const Point&)> norm;
  /// Membership in Q / closure(Q); null when only the ball-free operations
  /// are used. The boundary band width is baked in by the constructor.
  std::function<Region(const Point&)> region;
  /// Characteristic time of the flow; backward searches give up at
  /// 60 * time_scale and report "no exit found".
  double time_scale = 1.0;
  /// Half-width of the sampling box used by verify_flow_axioms.
  double sample_radius = 2.0;
};

struct AxiomReport {
  double identity_violation = 0.0;     // max norm of f(0,p) - p
  double group_violation = 0.0;        // max norm of f(s,f(t,p)) - f(s+t,p)
  double contraction_slack = 0.0;      // max of |f(t,p)| - |p| over t > 0; negative when contracting
  int samples = 0;
  bool pass(double tol) const {
    return identity_violation <= tol && group_violation <= tol && contraction_slack <= -tol;
  }
  std::string summary() const;
};

/// Samples points in the spec's box and reports worst-case violations of the
/// three flow axioms over the given time grid.
AxiomReport verify_flow_axioms(const ContractiveFlowSpec& spec, int samples,
                               const std::vector<double>& t_grid, double tol,
                               uint64_t seed = 0);

/// Unique time with |f(t,p)| = r, found by bracket doubling plus bisection on
/// the strictly decreasing norm profile. Throws for p = 0.
double time_to_radius(const ContractiveFlowSpec& spec, const Point& p, double r, double tol);

/// Largest t0 <= 0 with f(t,p) in closure(Q) for all t >= t0. Requires the
/// region oracle; throws when p is outside or when no exit is found within
/// the backward time cap.
double time_to_boundary(const ContractiveFlowSpec& spec, const Point& p, double tol);

struct BallMapResult {
  Point image;
  double t_r = 0.0;
  double t_boundary = 0.0;
  double residual = 0.0;
};

/// alpha: closure(Q) -> ball of radius r, p -> f(t_r(p) - t_b(p), p).
BallMapResult retract_to_ball(const ContractiveFlowSpec& spec, const Point& p, double r,
                              double tol);

/// beta: ball -> closure(Q), p -> f(t_b(p) - t_r(p), p). Inverse of alpha.
BallMapResult extend_from_ball(const ContractiveFlowSpec& spec, const Point& p, double r,
                               double tol);

/// f(t,(x,y)) = (e^-t x, e^-2t y) with the Euclidean norm; Q is the open unit
/// disk. The standard desk example with closed-form t_r and t_boundary.
ContractiveFlowSpec make_diagonal_toy_flow(double boundary_tol = 1e-9);

/// f(t,p) = p. Satisfies identity and group action but not contraction; used
/// to check that verify_flow_axioms rejects.
ContractiveFlowSpec make_identity_nonflow(int dim);

}  // namespace tpflow
