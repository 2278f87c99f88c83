#include "tpflow/amplituhedron.hpp"

#include <cmath>
#include <stdexcept>

#include "tpflow/plucker.hpp"

namespace tpflow {

AmplituhedronSpec build_spec(int k, int m, int n) {
  if (k < 1) throw std::invalid_argument("need k >= 1");
  if (m < 0 || m % 2 != 0) throw std::invalid_argument("m must be even and nonnegative");
  if (k + m > n) throw std::invalid_argument("need k + m <= n");
  AmplituhedronSpec spec;
  spec.k = k;
  spec.m = m;
  spec.n = n;
  spec.es = tau_eigensystem(k, n);
  spec.z0 = spec.es.top_rows(k + m);

  // Maximal minors of Z0 must all be positive. They share one sign by the
  // sine-product formula (m even keeps the shift sign of k), so a global
  // flip of u_1 is the only correction ever needed; apply it to the whole
  // eigensystem copy so the chart stays consistent with Z0.
  double min_minor = 0, max_minor = 0;
  bool first = true;
  for (const auto& s : k_subsets(n, k + m)) {
    const double d = spec.z0.columns(s).determinant();
    if (first) { min_minor = max_minor = d; first = false; }
    min_minor = std::min(min_minor, d);
    max_minor = std::max(max_minor, d);
  }
  if (max_minor < 0) {
    for (int j = 0; j < n; ++j) spec.es.U(0, j) = -spec.es.U(0, j);
    spec.z0 = spec.es.top_rows(k + m);
    const double new_min = -max_minor;
    max_minor = -min_minor;
    min_minor = new_min;
  }
  if (!(min_minor > 0))
    throw std::logic_error("Z0 maximal minors are not uniformly positive");
  return spec;
}

Matrix<double> amplituhedron_map(const AmplituhedronSpec& spec, const Matrix<double>& m) {
  if (m.rows() != spec.k || m.cols() != spec.n)
    throw std::invalid_argument("expected a k x n matrix");
  const auto cls = classify_positivity(plucker(m), 1e-9);
  if (cls.kind == Positivity::NotTNN)
    throw std::invalid_argument("amplituhedron_map requires a totally nonnegative point");
  const Matrix<double> img = m * spec.z0.transpose();  // k x (k+m)
  const Matrix<double> lead = img.block(0, 0, spec.k, spec.k);
  const Matrix<double> trail = img.block(0, spec.k, spec.k, spec.m);
  try {
    return lead.solve(trail);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("leading block singular; image left the big Schubert cell");
  }
}

Matrix<double> chart_project(const Matrix<double>& a, int m) {
  if (m < 1 || m > a.cols()) throw std::invalid_argument("projection width out of range");
  return a.block(0, 0, a.rows(), m);
}

Matrix<double> flow_m(const AmplituhedronSpec& spec, double t, const Matrix<double>& aprime) {
  if (aprime.rows() != spec.k || aprime.cols() != spec.m)
    throw std::invalid_argument("expected a k x m matrix");
  Matrix<double> out(spec.k, spec.m);
  for (int i = 0; i < spec.k; ++i)
    for (int j = 0; j < spec.m; ++j)
      out(i, j) = std::exp(t * (spec.es.lambdas[spec.k + j] - spec.es.lambdas[i])) * aprime(i, j);
  return out;
}

HullLocation ConvexHull::locate(const std::vector<double>& q, double tol) const {
  double worst = -1e300;
  for (size_t f = 0; f < normals.size(); ++f) {
    double s = -offsets[f];
    for (int j = 0; j < dim; ++j) s += normals[f][j] * q[j];
    worst = std::max(worst, s);
  }
  if (worst > tol) return HullLocation::Outside;
  if (worst > -tol) return HullLocation::Boundary;
  return HullLocation::Inside;
}

ConvexHull build_hull(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("degenerate hull: no points");
  const int d = static_cast<int>(points.front().size());
  const int npts = static_cast<int>(points.size());
  if (npts < d + 1) throw std::invalid_argument("degenerate hull: too few points");

  double scale = 0;
  for (const auto& p : points)
    for (double v : p) scale = std::max(scale, std::fabs(v));
  if (scale == 0) scale = 1;
  const double eps = 1e-9 * scale;

  ConvexHull hull;
  hull.dim = d;
  for (const auto& subset : k_subsets(npts, d)) {
    // hyperplane through the d chosen points; normal from cofactors of the
    // (d-1) x d difference matrix
    std::vector<std::vector<double>> diff(d - 1, std::vector<double>(d));
    const auto& base = points[subset[0] - 1];
    for (int r = 1; r < d; ++r)
      for (int j = 0; j < d; ++j) diff[r - 1][j] = points[subset[r] - 1][j] - base[j];
    std::vector<double> normal(d);
    double norm2 = 0;
    for (int j = 0; j < d; ++j) {
      if (d == 1) { normal[j] = 1; norm2 = 1; break; }
      Matrix<double> minor(d - 1, d - 1);
      for (int r = 0; r < d - 1; ++r) {
        int cc = 0;
        for (int c = 0; c < d; ++c) {
          if (c == j) continue;
          minor(r, cc++) = diff[r][c];
        }
      }
      normal[j] = ((j % 2) ? -1.0 : 1.0) * minor.determinant();
      norm2 += normal[j] * normal[j];
    }
    const double len = std::sqrt(norm2);
    if (len <= eps) continue;  // affinely dependent subset
    for (double& v : normal) v /= len;
    double offset = 0;
    for (int j = 0; j < d; ++j) offset += normal[j] * base[j];

    bool all_below = true, all_above = true;
    for (const auto& p : points) {
      double s = -offset;
      for (int j = 0; j < d; ++j) s += normal[j] * p[j];
      if (s > eps) all_below = false;
      if (s < -eps) all_above = false;
    }
    if (all_below) {
      hull.normals.push_back(normal);
      hull.offsets.push_back(offset);
    } else if (all_above) {
      for (double& v : normal) v = -v;
      hull.normals.push_back(normal);
      hull.offsets.push_back(-offset);
    }
  }
  if (hull.normals.empty()) throw std::invalid_argument("degenerate hull: no facets");
  return hull;
}

HullLocation cyclic_polytope_oracle(const AmplituhedronSpec& spec,
                                    const std::vector<std::vector<double>>& points,
                                    const std::vector<double>& q, double tol) {
  if (spec.k != 1) throw std::invalid_argument("hull oracle requires k = 1");
  return build_hull(points).locate(q, tol);
}

std::vector<std::vector<double>> amplituhedron_vertices(const AmplituhedronSpec& spec) {
  if (spec.k != 1) throw std::invalid_argument("vertex images require k = 1");
  std::vector<std::vector<double>> verts;
  verts.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    Matrix<double> line(1, spec.n);
    line(0, i) = 1.0;
    const Matrix<double> a = amplituhedron_map(spec, line);
    std::vector<double> v(spec.m);
    for (int j = 0; j < spec.m; ++j) v[j] = a(0, j);
    verts.push_back(std::move(v));
  }
  return verts;
}

ContractiveFlowSpec make_amp_flow_spec(const AmplituhedronSpec& spec) {
  ContractiveFlowSpec fs;
  const int k = spec.k, m = spec.m;
  fs.dim = k * m;
  fs.time_scale = 1.0 / spec.es.spectral_gap();
  fs.flow = [spec, k, m](double t, const Point& p) {
    Matrix<double> a(k, m);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = p[static_cast<size_t>(i) * m + j];
    const Matrix<double> out = flow_m(spec, t, a);
    Point q(static_cast<size_t>(k) * m);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < m; ++j) q[static_cast<size_t>(i) * m + j] = out(i, j);
    return q;
  };
  fs.norm = [](const Point& p) {
    double s = 0;
    for (double x : p) s += x * x;
    return std::sqrt(s);
  };
  return fs;
}

}  // namespace tpflow
