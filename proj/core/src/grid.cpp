#include "curvlayer/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvlayer {

Grid2D::Grid2D(int nx_, int ny_, double hx_, double hy_, double x0_, double y0_)
    : nx(nx_), ny(ny_), hx(hx_), hy(hy_), x0(x0_), y0(y0_) {
  if (nx < 3 || ny < 3) throw std::invalid_argument("Grid2D: need at least 3 nodes per axis");
  if (!(hx > 0.0) || !(hy > 0.0) || !std::isfinite(hx) || !std::isfinite(hy)) {
    throw std::invalid_argument("Grid2D: spacings must be positive");
  }
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw std::invalid_argument("Grid2D: origin must be finite");
}

Grid2D Grid2D::centered(double half_extent, double h) {
  if (!(half_extent > 0.0) || !(h > 0.0)) throw std::invalid_argument("Grid2D::centered: extent and spacing must be positive");
  const double cells = 2.0 * half_extent / h;
  const long n = std::lround(cells);
  if (std::abs(cells - static_cast<double>(n)) > 1e-9 * std::max(1.0, cells)) {
    throw std::invalid_argument("Grid2D::centered: 2*half_extent must be an integer multiple of h");
  }
  return Grid2D(static_cast<int>(n) + 1, static_cast<int>(n) + 1, h, h, -half_extent, -half_extent);
}

bool Grid2D::same_as(const Grid2D& o, double rel_tol) const {
  auto close = [rel_tol](double a, double b, double scale) { return std::abs(a - b) <= rel_tol * scale; };
  return nx == o.nx && ny == o.ny && close(hx, o.hx, hx) && close(hy, o.hy, hy) &&
         close(x0, o.x0, std::max(hx, std::abs(x0))) && close(y0, o.y0, std::max(hy, std::abs(y0)));
}

Field2D::Field2D(const Grid2D& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field2D::Field2D(const Grid2D& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("Field2D: value count does not match grid");
}

double Field2D::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field2D::ring_max_abs(int width) const {
  double m = 0.0;
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const bool ring = i < width || j < width || i >= grid_.nx - width || j >= grid_.ny - width;
      if (ring) m = std::max(m, std::abs((*this)(i, j)));
    }
  }
  return m;
}

Field2D sample(const Grid2D& grid, const std::function<double(double, double)>& fn) {
  Field2D f(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) f(i, j) = fn(grid.x(i), grid.y(j));
  }
  return f;
}

namespace {
double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }
}  // namespace

double integrate(const Field2D& f) {
  const Grid2D& g = f.grid();
  double total = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.nx; ++i) row += trapezoid_weight(i, g.nx) * f(i, j);
    total += trapezoid_weight(j, g.ny) * row;
  }
  return total * g.cell_area();
}

double inner(const Field2D& a, const Field2D& b) {
  if (!a.grid().same_as(b.grid())) throw std::invalid_argument("inner: fields live on different grids");
  const Grid2D& g = a.grid();
  double total = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.nx; ++i) row += trapezoid_weight(i, g.nx) * a(i, j) * b(i, j);
    total += trapezoid_weight(j, g.ny) * row;
  }
  return total * g.cell_area();
}

double bilinear(const Field2D& f, double x, double y) {
  const Grid2D& g = f.grid();
  const double s = (x - g.x0) / g.hx;
  const double t = (y - g.y0) / g.hy;
  if (s < 0.0 || t < 0.0 || s > g.nx - 1 || t > g.ny - 1) return 0.0;
  int i = std::min(static_cast<int>(s), g.nx - 2);
  int j = std::min(static_cast<int>(t), g.ny - 2);
  const double fs = s - i;
  const double ft = t - j;
  return (1.0 - fs) * (1.0 - ft) * f(i, j) + fs * (1.0 - ft) * f(i + 1, j) + (1.0 - fs) * ft * f(i, j + 1) +
         fs * ft * f(i + 1, j + 1);
}

}  // namespace curvlayer
