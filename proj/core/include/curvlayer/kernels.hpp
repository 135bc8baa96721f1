#pragma once

#include <vector>

#include "curvlayer/fft.hpp"
#include "curvlayer/grid.hpp"

namespace curvlayer {

// How the singular (or sharply peaked) diagonal cell of a radial kernel is
// weighted in lattice quadratures h^2 sum_q k(x_p - x_q) phi(x_q).
enum class DiagonalRule {
  // Kernel = c ln r + smooth: the diagonal value is c (ln h + lattice constant)
  // plus the smooth part at r = 0. Error O(h^4 ln h) for smooth phi.
  LogCorrected,
  // K0(k r) only: the diagonal value makes the infinite-lattice sum reproduce
  // the exact mass 2 pi / k^2. Stays accurate when k h is large.
  MassMatched,
  // MassMatched when the lattice sum is affordable, else LogCorrected.
  Auto,
};

// Kernel tabulated on every offset of an nx x ny square-cell lattice; layout
// as in LinearConvolver.
struct KernelTable {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  std::vector<double> values;

  double at(int di, int dj) const {
    return values[(di + nx - 1) + static_cast<std::size_t>(dj + ny - 1) * (2 * nx - 1)];
  }
  double diagonal() const { return at(0, 0); }
};

// gamma_E + ln(r/2)
KernelTable log_kernel_table(const Grid2D& grid);
// K0(k r)
KernelTable bessel_k0_table(const Grid2D& grid, double k, DiagonalRule rule = DiagonalRule::Auto);
// K0(k r) + ln k, written through the interpolation pair as
// (1 + f(kr)) ln(kr) + g(kr) - ln r; finite as k -> 0. Always LogCorrected.
KernelTable shifted_resolvent_table(const Grid2D& grid, double k);

// Diagonal value used by the MassMatched rule for K0(k r) at spacing h.
double mass_matched_diagonal(double k, double h);

enum class QuadratureMethod { Auto, Direct, Fft };

// sum_p sum_q w_p w_q a_p k(x_p - x_q) b_q with trapezoid weights w.
// Auto uses the direct double sum up to 128^2 nodes and FFT convolution above.
double double_integral(const Field2D& a, const KernelTable& kernel, const Field2D& b,
                       QuadratureMethod method = QuadratureMethod::Auto);

}  // namespace curvlayer
