#pragma once

#include <vector>

#include "tpflow/contractive_flow.hpp"
#include "tpflow/cyclic.hpp"
#include "tpflow/matrix.hpp"

namespace tpflow {

/// Data of the cyclically symmetric amplituhedron A_{n,k,m}(Z0): Z0 is the
/// (k+m) x n matrix whose rows are the top k+m orthonormal eigenvectors of
/// tau, validated to have positive maximal minors. The eigensystem copy kept
/// here is the one every chart/map operation of the spec routes through, so
/// a sign adjustment made for Z0 stays consistent with the chart.
struct AmplituhedronSpec {
  int k = 0;
  int m = 0;
  int n = 0;
  TauEigensystem es;
  Matrix<double> z0;
};

AmplituhedronSpec build_spec(int k, int m, int n);

/// gamma . (Z0)_Gr: sends the row span of a TNN k x n matrix to the unique
/// A' with M Z0^T row-equivalent to [Id_k | A'].
Matrix<double> amplituhedron_map(const AmplituhedronSpec& spec, const Matrix<double>& m);

/// pi: first m columns of a chart point.
Matrix<double> chart_project(const Matrix<double>& a, int m);

/// Entrywise flow e^(t (lambda_{k+j} - lambda_i)) on k x m matrices.
Matrix<double> flow_m(const AmplituhedronSpec& spec, double t, const Matrix<double>& aprime);

enum class HullLocation { Inside, Boundary, Outside };

/// Facet description of a full-dimensional convex hull in R^d, built by
/// brute-force hyperplane enumeration over d-subsets of the points. Desk
/// scale: d <= 4, a few hundred candidate facets.
struct ConvexHull {
  int dim = 0;
  std::vector<std::vector<double>> normals;  // unit normals
  std::vector<double> offsets;               // facet is normal . x = offset, hull side <=

  HullLocation locate(const std::vector<double>& q, double tol) const;
};

ConvexHull build_hull(const std::vector<std::vector<double>>& points);

/// Convex-position membership test for k = 1 amplituhedra (cyclic polytopes).
HullLocation cyclic_polytope_oracle(const AmplituhedronSpec& spec,
                                    const std::vector<std::vector<double>>& points,
                                    const std::vector<double>& q, double tol);

/// Images of the n coordinate lines; the vertex set of the k = 1 polytope.
std::vector<std::vector<double>> amplituhedron_vertices(const AmplituhedronSpec& spec);

/// Flow spec for f0 on Mat(k, m), Frobenius norm (no region oracle).
ContractiveFlowSpec make_amp_flow_spec(const AmplituhedronSpec& spec);

}  // namespace tpflow
