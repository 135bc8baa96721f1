#include "curvlayer/stencil.hpp"

#include <array>
#include <stdexcept>

namespace curvlayer {

std::vector<double> fornberg_weights(int m, const std::vector<double>& nodes, double x0) {
  const int n = static_cast<int>(nodes.size());
  if (m < 0 || n <= m) throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");
  // c[i][k]: weight of node i for derivative k
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

const std::vector<double>& central_weights(int m) {
  static const std::array<std::vector<double>, 5> table = [] {
    std::vector<double> nodes;
    for (int k = -kStencilRadius; k <= kStencilRadius; ++k) nodes.push_back(k);
    std::array<std::vector<double>, 5> t;
    for (int order = 0; order <= 4; ++order) t[order] = fornberg_weights(order, nodes, 0.0);
    t[0].assign(nodes.size(), 0.0);
    t[0][kStencilRadius] = 1.0;
    return t;
  }();
  if (m < 0 || m > 4) throw std::invalid_argument("central_weights: derivative order must be 0..4");
  return table[m];
}

namespace {

Field2D apply_along(const Field2D& f, int m, bool along_x) {
  const Grid2D& g = f.grid();
  Field2D out(g);
  if (m == 0) return f;
  const std::vector<double>& w = central_weights(m);
  const double h = along_x ? g.hx : g.hy;
  double scale = 1.0;
  for (int k = 0; k < m; ++k) scale /= h;
  const int r = kStencilRadius;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int pos = along_x ? i : j;
      const int len = along_x ? g.nx : g.ny;
      if (pos < r || pos >= len - r) continue;
      double s = 0.0;
      for (int k = -r; k <= r; ++k) s += w[k + r] * (along_x ? f(i + k, j) : f(i, j + k));
      out(i, j) = s * scale;
    }
  }
  return out;
}

}  // namespace

Field2D central_partial(const Field2D& f, int n1, int n2) {
  if (n1 < 0 || n2 < 0 || n1 + n2 > 4) throw std::invalid_argument("central_partial: total order must be 0..4");
  Field2D out = apply_along(apply_along(f, n1, true), n2, false);
  const Grid2D& g = f.grid();
  const int r = kStencilRadius;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i < r || j < r || i >= g.nx - r || j >= g.ny - r) out(i, j) = 0.0;
    }
  }
  return out;
}

}  // namespace curvlayer
