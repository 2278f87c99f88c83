#include "tpflow/cyclic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tpflow {

namespace {
constexpr double kPi = std::numbers::pi;
}

CyclicOperators build_operators(int k, int n) {
  if (k <= 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
  CyclicOperators ops;
  ops.k = k;
  ops.n = n;
  ops.left_shift = shift_matrix<Rat>(k, n);
  ops.right_shift = ops.left_shift.transpose();
  ops.tau = ops.left_shift + ops.right_shift;
  return ops;
}

TauEigensystem tau_eigensystem(int k, int n) {
  if (k <= 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
  TauEigensystem es;
  es.k = k;
  es.n = n;
  es.U = Matrix<double>(n, n);
  es.lambdas.reserve(n);

  // Frequencies m = k-1 (mod 2) in [0, n]; m and 2n-m share the eigenvalue
  // 2cos(pi m / n), so m <= n enumerates the spectrum top-down. m in (0, n)
  // contributes the two-dimensional eigenspace spanned by the cos and sin
  // vectors; m = 0 and m = n are simple.
  int row = 0;
  const int start = (k % 2 == 1) ? 0 : 1;
  for (int m = start; m <= n; m += 2) {
    const double lambda = 2.0 * std::cos(kPi * m / n);
    if (m == 0 || m == n) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(n));
      es.lambdas.push_back(lambda);
      for (int j = 0; j < n; ++j) es.U(row, j) = scale * std::cos(kPi * m * j / n);
      ++row;
      continue;
    }
    const double scale = std::sqrt(2.0 / n);
    std::vector<double> c(n), s(n);
    for (int j = 0; j < n; ++j) {
      c[j] = scale * std::cos(kPi * m * j / n);
      s[j] = scale * std::sin(kPi * m * j / n);
    }
    // Basis orientation inside the eigenspace. The top pair of an even-k
    // system uses (sin, -cos); every other pair uses (cos, sin). This pins
    // the chart so the Gr(2,4) worked example comes out in the familiar
    // coordinates.
    const bool top_even_pair = (k % 2 == 0) && (m == 1);
    es.lambdas.push_back(lambda);
    es.lambdas.push_back(lambda);
    for (int j = 0; j < n; ++j) {
      if (top_even_pair) {
        es.U(row, j) = s[j];
        es.U(row + 1, j) = -c[j];
      } else {
        es.U(row, j) = c[j];
        es.U(row + 1, j) = s[j];
      }
    }
    row += 2;
  }
  if (row != n) throw std::logic_error("eigenbasis construction did not fill R^n");

  // Fix the global sign so the top-k rows have positive maximal minors.
  const double d = es.top_rows(k).columns(k_subsets(n, k).front()).determinant();
  if (d < 0) {
    for (int j = 0; j < n; ++j) es.U(0, j) = -es.U(0, j);
  }
  return es;
}

PluckerVector<double> x0_plucker(int k, int n) {
  if (k <= 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
  PluckerVector<double> p;
  p.k = k;
  p.n = n;
  const auto subs = k_subsets(n, k);
  p.coords.reserve(subs.size());
  for (const auto& s : subs) {
    double v = 1.0;
    for (size_t a = 0; a < s.size(); ++a)
      for (size_t b = a + 1; b < s.size(); ++b)
        v *= std::sin(kPi * (s[b] - s[a]) / n);
    p.coords.push_back(v);
  }
  p.normalization = Normalization::Raw;
  return p;
}

Matrix<double> chart_embed(const TauEigensystem& es, const Matrix<double>& a) {
  const int k = es.k, n = es.n;
  if (a.rows() != k || a.cols() != n - k)
    throw std::invalid_argument("chart point must be k x (n-k)");
  Matrix<double> m(k, n);
  for (int i = 0; i < k; ++i)
    for (int col = 0; col < n; ++col) {
      double v = es.U(i, col);
      for (int j = 0; j < n - k; ++j) v += a(i, j) * es.U(k + j, col);
      m(i, col) = v;
    }
  return m;
}

Matrix<double> chart_invert(const TauEigensystem& es, const Matrix<double>& m) {
  const int k = es.k, n = es.n;
  if (m.rows() != k || m.cols() != n)
    throw std::invalid_argument("expected a k x n matrix");
  // coefficients of the rows in the eigenbasis
  const Matrix<double> coeff = m * es.U.transpose();
  const Matrix<double> lead = coeff.block(0, 0, k, k);
  const Matrix<double> trail = coeff.block(0, k, k, n - k);
  try {
    return lead.solve(trail);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("outside chart: span meets span(u_{k+1},...,u_n)");
  }
}

Matrix<double> flow_chart(const TauEigensystem& es, double t, const Matrix<double>& a) {
  const int k = es.k, n = es.n;
  if (a.rows() != k || a.cols() != n - k)
    throw std::invalid_argument("chart point must be k x (n-k)");
  Matrix<double> out(k, n - k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n - k; ++j)
      out(i, j) = std::exp(t * (es.lambdas[k + j] - es.lambdas[i])) * a(i, j);
  return out;
}

Matrix<double> flow_grassmann(const TauEigensystem& es, double t, const Matrix<double>& m) {
  if (m.cols() != es.n) throw std::invalid_argument("matrix width must equal n");
  // M exp(t tau) = ((M U^T) e^{t Lambda}) U
  Matrix<double> coeff = m * es.U.transpose();
  for (int i = 0; i < coeff.rows(); ++i)
    for (int j = 0; j < coeff.cols(); ++j) coeff(i, j) *= std::exp(t * es.lambdas[j]);
  return coeff * es.U;
}

Matrix<double> flow_shift_only(int k, int n, double t, const Matrix<double>& m) {
  if (m.cols() != n) throw std::invalid_argument("matrix width must equal n");
  // exp(t S^T) summed until the terms vanish; S^n = +-1 keeps powers bounded
  const Matrix<double> st = shift_matrix<double>(k, n).transpose();
  Matrix<double> term = Matrix<double>::identity(n);
  Matrix<double> sum = term;
  for (int j = 1; j <= 40; ++j) {
    term = (term * st).scaled(t / j);
    sum = sum + term;
  }
  return m * sum;
}

ContractiveFlowSpec make_chart_flow_spec(const TauEigensystem& es, double membership_tol) {
  ContractiveFlowSpec spec;
  const int k = es.k, nk = es.n - es.k;
  spec.dim = k * nk;
  spec.time_scale = 1.0 / es.spectral_gap();
  auto unflatten = [k, nk](const Point& p) {
    Matrix<double> a(k, nk);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < nk; ++j) a(i, j) = p[static_cast<size_t>(i) * nk + j];
    return a;
  };
  spec.flow = [es, k, nk, unflatten](double t, const Point& p) {
    const Matrix<double> out = flow_chart(es, t, unflatten(p));
    Point q(static_cast<size_t>(k) * nk);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < nk; ++j) q[static_cast<size_t>(i) * nk + j] = out(i, j);
    return q;
  };
  spec.norm = [](const Point& p) {
    double s = 0;
    for (double x : p) s += x * x;
    return std::sqrt(s);
  };
  spec.region = [es, unflatten, membership_tol](const Point& p) {
    const auto cls = classify_positivity(plucker(chart_embed(es, unflatten(p))), membership_tol);
    switch (cls.kind) {
      case Positivity::TotallyPositive: return Region::Interior;
      case Positivity::Boundary: return Region::ClosureBoundary;
      default: return Region::Outside;
    }
  };
  return spec;
}

}  // namespace tpflow
