#include "tpflow/trajectory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tpflow/plucker.hpp"

namespace tpflow {

namespace {

double frobenius(const Matrix<double>& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

double min_normalized_coord(const PluckerVector<double>& p) {
  double maxabs = 0;
  for (double c : p.coords) maxabs = std::max(maxabs, std::fabs(c));
  if (maxabs == 0) return 0;
  double mn = p.coords.front() / maxabs;
  for (double c : p.coords) mn = std::min(mn, c / maxabs);
  return mn;
}

void write_row(std::ostream& out, double t, const std::vector<double>& coords, double norm,
               double extra) {
  out << t;
  for (double c : coords) out << ',' << c;
  out << ',' << norm << ',' << extra << '\n';
}

}  // namespace

void trajectory_gr(const TauEigensystem& es, const Matrix<double>& a0,
                   const std::vector<double>& ts, std::ostream& out) {
  out << "t";
  for (int i = 1; i <= a0.rows(); ++i)
    for (int j = 1; j <= a0.cols(); ++j) out << ",a" << i << j;
  out << ",norm,min_plucker\n";
  for (double t : ts) {
    const Matrix<double> a = flow_chart(es, t, a0);
    std::vector<double> coords;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) coords.push_back(a(i, j));
    const auto p = plucker(chart_embed(es, a), Normalization::Raw);
    write_row(out, t, coords, frobenius(a), min_normalized_coord(p));
  }
}

void trajectory_u(const UnipotentMatrix<double>& x0, double c,
                  const std::vector<double>& ts, std::ostream& out) {
  const int n = x0.n();
  out << "t";
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out << ",b" << i << j;
  out << ",norm,min_minor\n";
  for (double t : ts) {
    if (!(t > 0)) throw std::invalid_argument("a(t) trajectories need t > 0");
    const UnipotentMatrix<double> x = a_flow(t, x0);
    const BCoords<double> b = b_coords(x, c);
    // min over all equal-size minors, exhaustive at desk scale
    const Matrix<double> d = x.dense();
    double mn = 1e300;
    for (int s = 1; s <= n; ++s) {
      const auto subs = k_subsets(n, s);
      for (const auto& rows : subs)
        for (const auto& cols : subs) {
          Matrix<double> sub(s, s);
          for (int a = 0; a < s; ++a)
            for (int bb = 0; bb < s; ++bb) sub(a, bb) = d(rows[a] - 1, cols[bb] - 1);
          mn = std::min(mn, sub.determinant());
        }
    }
    write_row(out, t, b.values, to_double(b.norm_inf()), mn);
  }
}

void trajectory_amp(const AmplituhedronSpec& spec, const Matrix<double>& a0,
                    const std::vector<double>& ts, std::ostream& out) {
  out << "t";
  for (int i = 1; i <= a0.rows(); ++i)
    for (int j = 1; j <= a0.cols(); ++j) out << ",a" << i << j;
  out << ",norm,min_plucker\n";
  for (double t : ts) {
    const Matrix<double> a = flow_m(spec, t, a0);
    std::vector<double> coords;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) coords.push_back(a(i, j));
    Matrix<double> rep(spec.k, spec.k + spec.m);
    for (int i = 0; i < spec.k; ++i) {
      rep(i, i) = 1.0;
      for (int j = 0; j < spec.m; ++j) rep(i, spec.k + j) = a(i, j);
    }
    const auto p = plucker(rep, Normalization::Raw);
    write_row(out, t, coords, frobenius(a), min_normalized_coord(p));
  }
}

std::vector<double> parse_t_grid(const std::string& grid) {
  std::vector<double> ts;
  if (grid.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(grid);
    is >> a >> c1 >> b >> c2 >> step;
    if (!is || c1 != ':' || c2 != ':' || step <= 0)
      throw std::invalid_argument("bad t grid \"" + grid + "\"; use start:end:step");
    for (double t = a; t <= b + 1e-12; t += step) ts.push_back(t);
    return ts;
  }
  std::stringstream ss(grid);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    ts.push_back(std::stod(tok));
  }
  if (ts.empty()) throw std::invalid_argument("empty t grid");
  return ts;
}

}  // namespace tpflow
