#include "curvlayer/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "curvlayer/specfun.hpp"

namespace curvlayer {
namespace {

constexpr double kLatticeCutoff = 50.0;        // K0 negligible beyond k r = 50
constexpr double kMaxLatticeRadius = 4000.0;   // affordability limit for mass matching

double square_spacing(const Grid2D& grid) {
  if (std::abs(grid.hx - grid.hy) > 1e-12 * grid.hx) {
    throw std::invalid_argument("kernel quadrature requires square cells (hx == hy)");
  }
  return grid.hx;
}

template <typename Radial>
KernelTable tabulate(const Grid2D& grid, Radial radial, double diagonal) {
  KernelTable t;
  t.nx = grid.nx;
  t.ny = grid.ny;
  t.h = square_spacing(grid);
  const int tx = 2 * t.nx - 1, ty = 2 * t.ny - 1;
  t.values.assign(static_cast<std::size_t>(tx) * ty, 0.0);
  // radial symmetry: evaluate on |di| <= ... quadrant and mirror
  for (int dj = 0; dj < t.ny; ++dj) {
    for (int di = 0; di < t.nx; ++di) {
      double v;
      if (di == 0 && dj == 0) {
        v = diagonal;
      } else if (dj < t.nx && di < t.ny && di < dj) {
        v = t.values[(dj + t.nx - 1) + static_cast<std::size_t>(di + t.ny - 1) * tx];
      } else {
        v = radial(t.h * std::hypot(static_cast<double>(di), static_cast<double>(dj)));
      }
      for (int sj : {1, -1}) {
        for (int si : {1, -1}) {
          t.values[(si * di + t.nx - 1) + static_cast<std::size_t>(sj * dj + t.ny - 1) * tx] = v;
        }
      }
    }
  }
  return t;
}

bool mass_matching_affordable(double k, double h) { return kLatticeCutoff / (k * h) <= kMaxLatticeRadius; }

}  // namespace

double mass_matched_diagonal(double k, double h) {
  if (!(k > 0.0) || !(h > 0.0)) throw std::invalid_argument("mass_matched_diagonal: k and h must be positive");
  const double kh = k * h;
  const int radius = static_cast<int>(std::ceil(kLatticeCutoff / kh));
  // octant sum over n = (i, j) with 0 <= j <= i, n != 0
  double sum = 0.0;
  for (int i = 1; i <= radius; ++i) {
    double row = 0.0;
    for (int j = 0; j <= i; ++j) {
      const double r = kh * std::hypot(static_cast<double>(i), static_cast<double>(j));
      if (r > kLatticeCutoff) break;
      const double mult = (j == 0 || j == i) ? 4.0 : 8.0;
      row += mult * bessel_k0(r);
    }
    sum += row;
  }
  return 2.0 * kPi / (kh * kh) - sum;
}

KernelTable log_kernel_table(const Grid2D& grid) {
  const double h = square_spacing(grid);
  const double diag = std::log(h) + kLatticeLogConstant + kEulerGamma - kLn2;
  return tabulate(grid, [](double r) { return kEulerGamma + std::log(0.5 * r); }, diag);
}

KernelTable bessel_k0_table(const Grid2D& grid, double k, DiagonalRule rule) {
  if (!(k > 0.0)) throw std::invalid_argument("bessel_k0_table: k must be positive");
  const double h = square_spacing(grid);
  if (rule == DiagonalRule::Auto) {
    rule = mass_matching_affordable(k, h) ? DiagonalRule::MassMatched : DiagonalRule::LogCorrected;
  }
  double diag;
  if (rule == DiagonalRule::MassMatched) {
    diag = mass_matched_diagonal(k, h);
  } else {
    diag = -(std::log(h) + kLatticeLogConstant) - std::log(0.5 * k) - kEulerGamma;
  }
  return tabulate(grid, [k](double r) { return bessel_k0(k * r); }, diag);
}

KernelTable shifted_resolvent_table(const Grid2D& grid, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("shifted_resolvent_table: k must be positive");
  const double h = square_spacing(grid);
  const double diag = -(std::log(h) + kLatticeLogConstant) + kLn2 - kEulerGamma;
  return tabulate(
      grid,
      [k](double r) {
        const double u = k * r;
        return interp_f_plus_one(u) * std::log(u) + interp_g(u) - std::log(r);
      },
      diag);
}

double double_integral(const Field2D& a, const KernelTable& kernel, const Field2D& b, QuadratureMethod method) {
  const Grid2D& g = a.grid();
  if (!g.same_as(b.grid())) throw std::invalid_argument("double_integral: fields on different grids");
  if (kernel.nx != g.nx || kernel.ny != g.ny) throw std::invalid_argument("double_integral: kernel table does not match grid");
  const double h2 = g.cell_area();
  auto tw = [](int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  std::vector<double> wa(g.size()), wb(g.size());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t p = g.index(i, j);
      const double w = tw(i, g.nx) * tw(j, g.ny) * h2;
      wa[p] = w * a[p];
      wb[p] = w * b[p];
    }
  }
  if (method == QuadratureMethod::Auto) method = (g.size() <= 128u * 128u) ? QuadratureMethod::Direct : QuadratureMethod::Fft;
  double total = 0.0;
  if (method == QuadratureMethod::Direct) {
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double ap = wa[g.index(i, j)];
        if (ap == 0.0) continue;
        double s = 0.0;
        for (int jj = 0; jj < g.ny; ++jj) {
          for (int ii = 0; ii < g.nx; ++ii) s += kernel.at(i - ii, j - jj) * wb[g.index(ii, jj)];
        }
        total += ap * s;
      }
    }
    return total;
  }
  LinearConvolver conv(g.nx, g.ny);
  const KernelSpectrum spec = conv.transform_kernel(kernel.values);
  std::vector<double> kb(g.size());
  conv.apply(spec, wb.data(), kb.data());
  for (std::size_t p = 0; p < g.size(); ++p) total += wa[p] * kb[p];
  return total;
}

}  // namespace curvlayer
