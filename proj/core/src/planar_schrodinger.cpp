#include "curvlayer/planar_schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvlayer/fft.hpp"
#include "curvlayer/kernels.hpp"
#include "curvlayer/quadrature.hpp"
#include "curvlayer/specfun.hpp"

namespace curvlayer {

ModeProjectedPotential::ModeProjectedPotential(const TransverseBasis& basis, const Grid2D& grid)
    : basis_(basis), grid_(grid) {
  const int n = basis.modes();
  fields_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, Field2D(grid));
}

std::size_t ModeProjectedPotential::slot(int j, int jp) const {
  const int n = basis_.modes();
  if (j < 1 || jp < 1 || j > n || jp > n) throw std::out_of_range("ModeProjectedPotential: mode index out of range");
  if (j > jp) std::swap(j, jp);
  // row-wise packing of the upper triangle
  const std::size_t r = static_cast<std::size_t>(j - 1);
  return r * n - r * (r - 1) / 2 + static_cast<std::size_t>(jp - j);
}

ModeProjectedPotential project_potential(const PotentialSpec& V, const TransverseBasis& basis, const Grid2D& grid,
                                         int nu) {
  const int n = basis.modes();
  const double a = basis.half_width();
  QuadratureRule rule;
  Grid2D g = grid;
  if (V.is_sampled()) {
    rule = V.u_rule();
    g = V.grid();
    if (static_cast<int>(rule.nodes.size()) < 2 * n) {
      throw std::invalid_argument("project_potential: sampled u-rule has fewer than 2N nodes");
    }
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    if (std::abs(wsum - 2.0 * a) > 1e-10 * a) {
      throw std::invalid_argument("project_potential: sampled u-rule does not cover (-a, a)");
    }
  } else {
    if (nu < 2 * n) throw std::invalid_argument("project_potential: need nu >= 2N transverse nodes");
    rule = gauss_legendre(nu, -a, a);
  }
  const int m = static_cast<int>(rule.nodes.size());
  std::vector<double> chi(static_cast<std::size_t>(n) * m);
  for (int j = 1; j <= n; ++j) {
    for (int k = 0; k < m; ++k) chi[static_cast<std::size_t>(j - 1) * m + k] = basis.chi(j, rule.nodes[k]);
  }
  ModeProjectedPotential proj(basis, g);
  proj.decay_exponent = V.decay_exponent();
  std::vector<double> vu(m);
  for (int jy = 0; jy < g.ny; ++jy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const std::size_t p = g.index(ix, jy);
      for (int k = 0; k < m; ++k) {
        const double v = V.is_sampled() ? V.values()[static_cast<std::size_t>(k) * g.size() + p]
                                        : V(g.x(ix), g.y(jy), rule.nodes[k]);
        if (!std::isfinite(v)) throw std::invalid_argument("project_potential: potential is not finite");
        vu[k] = v * rule.weights[k];
      }
      for (int j = 1; j <= n; ++j) {
        const double* cj = &chi[static_cast<std::size_t>(j - 1) * m];
        for (int jp = j; jp <= n; ++jp) {
          const double* cp = &chi[static_cast<std::size_t>(jp - 1) * m];
          double s = 0.0;
          for (int k = 0; k < m; ++k) s += cj[k] * vu[k] * cp[k];
          proj.V(j, jp)[p] = s;
        }
      }
    }
  }
  double diag = 0.0;
  for (int j = 1; j <= n; ++j) {
    for (int jp = j; jp <= n; ++jp) diag = std::max(diag, proj.V(j, jp).ring_max_abs(1));
  }
  proj.boundary_diagnostic = diag;
  return proj;
}

std::string to_string(ExistenceVerdict v) { return v == ExistenceVerdict::BoundState ? "bound" : "none"; }

ExpansionTerms expansion_w(double lambda, const ModeProjectedPotential& proj) {
  if (!(lambda > 0.0)) throw std::invalid_argument("expansion_w: lambda must be positive");
  const Grid2D& grid = proj.grid();
  const TransverseBasis& basis = proj.basis();
  ExpansionTerms t;
  const Field2D& v11 = proj.V(1, 1);
  t.integral_v11 = integrate(v11);
  // Scale for the zero-mean test: first-row projections, so that a u-odd
  // potential with V11 at roundoff level is still recognised.
  double scale = 0.0;
  for (int j = 1; j <= proj.modes(); ++j) {
    Field2D absv(grid);
    const Field2D& v1j = proj.V(1, j);
    for (std::size_t p = 0; p < grid.size(); ++p) absv[p] = std::abs(v1j[p]);
    scale += integrate(absv);
  }
  const double c = lambda / (2.0 * kPi);
  t.first = c * t.integral_v11;
  t.log_term = (v11.max_abs() > 0.0) ? double_integral(v11, log_kernel_table(grid), v11) : 0.0;

  double running = 0.0;
  t.modes_used = 1;
  for (int j = 2; j <= proj.modes(); ++j) {
    const Field2D& v1j = proj.V(1, j);
    double term = 0.0;
    if (v1j.max_abs() > 0.0) term = double_integral(v1j, bessel_k0_table(grid, std::sqrt(basis.k_sq(j))), v1j);
    t.mode_terms.push_back(term);
    running += term;
    t.modes_used = j;
    const double last_two = std::max(std::abs(term), t.mode_terms.size() >= 2 ? std::abs(t.mode_terms[t.mode_terms.size() - 2]) : 0.0);
    if (j >= 8 && last_two < 1e-6 * std::abs(running)) break;
  }
  t.second = c * c * (t.log_term - running);
  t.w = t.first + t.second;

  const double zero_tol = 1e-12 * std::max(scale, 1e-300);
  t.zero_mean = std::abs(t.integral_v11) <= zero_tol;
  if (t.integral_v11 < -zero_tol) {
    t.verdict = ExistenceVerdict::BoundState;
  } else if (t.integral_v11 > zero_tol) {
    t.verdict = ExistenceVerdict::NoBoundState;
    t.message = "V is repulsive in the mean (int V11 > 0): no weak-coupling bound state";
  } else {
    bool nonzero = v11.max_abs() > 0.0;
    for (int j = 2; j <= proj.modes() && !nonzero; ++j) nonzero = proj.V(1, j).max_abs() > 0.0;
    if (nonzero && t.second < 0.0) {
      t.verdict = ExistenceVerdict::BoundState;
      t.message = "zero-mean case: bound state from the negative second-order term";
    } else {
      t.verdict = ExistenceVerdict::NoBoundState;
      t.message = nonzero ? "zero-mean case with non-negative second-order term" : "potential vanishes";
    }
  }
  return t;
}

double fourier_mode_term(const Field2D& v, double k, int pad_factor) {
  if (!(k > 0.0)) throw std::invalid_argument("fourier_mode_term: k must be positive");
  const PowerSpectrum s = power_spectrum(v, pad_factor);
  double integral = 0.0;
  for (std::size_t i = 0; i < s.power.size(); ++i) integral += s.weight[i] * s.power[i] * s.d_area / (s.omega_sq[i] + k * k);
  return 2.0 * kPi * integral;
}

}  // namespace curvlayer
