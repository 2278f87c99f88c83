#include "tpflow/unipotent.hpp"

#include <cmath>

namespace tpflow {

ContractiveFlowSpec make_unipotent_flow_spec(int n, double c) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (!(c > 1)) throw std::invalid_argument("need c > 1");
  ContractiveFlowSpec spec;
  const int pairs = n * (n - 1) / 2;
  spec.dim = pairs - 1;
  spec.sample_radius = 0.4;  // stay within the chart where x(b) has positive t-powers

  // pair order: (1,2),(1,3),...,(n-1,n); the dropped coordinate is the last
  // superdiagonal entry b_{n-1,n}.
  std::vector<std::pair<int, int>> order;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) order.emplace_back(i, j);

  auto to_full = [order, n](const Point& p) {
    BCoords<double> b;
    b.n = n;
    b.c = 0;  // unused on the double path
    b.values.resize(order.size());
    size_t src = 0;
    double superdiag = 0;
    for (size_t idx = 0; idx < order.size(); ++idx) {
      const auto [i, j] = order[idx];
      if (i == n - 1 && j == n) continue;
      b.values[idx] = p[src++];
      if (j == i + 1) superdiag += b.values[idx];
    }
    b.b(n - 1, n) = -superdiag;
    return b;
  };
  auto from_full = [order, n](const BCoords<double>& b) {
    Point p;
    p.reserve(order.size() - 1);
    for (size_t idx = 0; idx < order.size(); ++idx) {
      const auto [i, j] = order[idx];
      if (i == n - 1 && j == n) continue;
      p.push_back(b.values[idx]);
    }
    return p;
  };
  auto b_to_x = [n, c](const BCoords<double>& b) {
    UnipotentMatrix<double> x(n);
    for (int i = 1; i <= n; ++i) {
      double fact = 1, cpow = 1;
      for (int j = i + 1; j <= n; ++j) {
        if (j - i > 1) fact *= (j - i);
        cpow *= c;
        x.x(i, j) = (cpow * b.b(i, j) + 1.0) / fact;
      }
    }
    return x;
  };

  spec.flow = [to_full, from_full, b_to_x, c](double t, const Point& p) {
    const UnipotentMatrix<double> x = b_to_x(to_full(p));
    const UnipotentMatrix<double> y = a_flow(std::exp(t), x);
    return from_full(b_coords(y, c));
  };
  spec.norm = [to_full](const Point& p) {
    return to_full(p).norm_inf();
  };
  return spec;
}

}  // namespace tpflow
