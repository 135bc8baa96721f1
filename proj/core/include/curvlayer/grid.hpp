#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace curvlayer {

// Uniform node lattice x = x0 + i hx, y = y0 + j hy; node (i, j) is stored at
// j * nx + i (x runs fastest).
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  Grid2D() = default;
  Grid2D(int nx, int ny, double hx, double hy, double x0, double y0);

  // Square grid covering [-half_extent, half_extent]^2 with spacing h.
  static Grid2D centered(double half_extent, double h);

  double x(int i) const { return x0 + i * hx; }
  double y(int j) const { return y0 + j * hy; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  double cell_area() const { return hx * hy; }
  bool same_as(const Grid2D& other, double rel_tol = 1e-12) const;
};

class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(const Grid2D& grid, double fill = 0.0);
  Field2D(const Grid2D& grid, std::vector<double> values);

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double max_abs() const;
  // Largest |value| over the outer `width`-node ring.
  double ring_max_abs(int width) const;

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

Field2D sample(const Grid2D& grid, const std::function<double(double, double)>& fn);

// Trapezoid rule (end nodes weighted by 1/2) with serial accumulation.
double integrate(const Field2D& f);
double inner(const Field2D& a, const Field2D& b);

// Bilinear interpolation; zero outside the grid.
double bilinear(const Field2D& f, double x, double y);

}  // namespace curvlayer
