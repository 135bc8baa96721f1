#include "curvlayer/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "curvlayer/fft.hpp"
#include "curvlayer/kernels.hpp"
#include "curvlayer/specfun.hpp"

namespace curvlayer {

EnergyMap energy_from_w(double w, double kappa1) {
  if (!(w < 0.0)) throw NoBoundState("no bound state: w = " + std::to_string(w) + " is not negative");
  EnergyMap e;
  e.log_gap = 2.0 / w;
  e.gap = std::exp(e.log_gap);
  e.gap_underflow = !(e.gap > 1e-300);
  e.E = kappa1 * kappa1 - (e.gap_underflow ? 0.0 : e.gap);
  return e;
}

void attach_energy(SpectralResult& r, double scale, double kappa1, bool use_tail_corrected) {
  r.energy = energy_from_w(scale * (use_tail_corrected ? r.w_tail_corrected : r.w), kappa1);
}

namespace {

struct SpectrumMoments {
  double p0 = 0.0;  // ||m||^2
  double p2 = 0.0;  // ||grad m||^2
  double p4 = 0.0;  // ||lap m||^2
};

SpectrumMoments moments(const PowerSpectrum& s) {
  SpectrumMoments m;
  for (std::size_t i = 0; i < s.power.size(); ++i) {
    const double wp = s.weight[i] * s.power[i] * s.d_area;
    m.p0 += wp;
    m.p2 += wp * s.omega_sq[i];
    m.p4 += wp * s.omega_sq[i] * s.omega_sq[i];
  }
  return m;
}

void finish(SpectralResult& r, const TransverseBasis& basis, const AsymptoticOptions& opt) {
  r.gamma_order = std::min(1.0, 0.5 * opt.decay_exponent);
  r.deficits = overlap_sums(basis);
  r.cancellation_residual = r.m0_norm_sq * r.deficits.s2_deficit / (2.0 * kPi);
  r.tail_estimate = -(r.deficits.s2_deficit * r.m0_norm_sq - r.deficits.s0_deficit * r.grad_m0_norm_sq) / (2.0 * kPi);
  r.w_tail_corrected = r.w + r.tail_estimate;
  const double scale = std::max(r.m0_norm_sq, 1e-300);
  if (r.m0_norm_sq > 1e-24 && !(r.w < 0.0)) {
    r.consistent = false;
    r.message = "non-negative w1 for a non-planar surface";
  }
  if (r.boundary_diagnostic > opt.boundary_threshold * std::max(1.0, std::sqrt(scale))) {
    r.message += (r.message.empty() ? "" : "; ") + std::string("m0 has not decayed at the grid boundary");
  }
}

}  // namespace

SpectralResult w1_realspace(const Field2D& m0, const TransverseBasis& basis, const AsymptoticOptions& opt) {
  SpectralResult r;
  r.route = "realspace";
  r.boundary_diagnostic = m0.ring_max_abs(1);
  r.m0_norm_sq = inner(m0, m0);
  r.grad_m0_norm_sq = moments(power_spectrum(m0, opt.pad_factor)).p2;
  const bool zero = m0.max_abs() == 0.0;
  double cumulative = 0.0;
  for (int j = 2; j <= basis.modes(); ++j) {
    ModeContribution c;
    c.j = j;
    c.k_sq = basis.k_sq(j);
    c.t_sq = basis.overlap(j) * basis.overlap(j);
    if (c.t_sq > 0.0 && !zero) {
      const KernelTable table = bessel_k0_table(m0.grid(), std::sqrt(c.k_sq), DiagonalRule::MassMatched);
      const double q = double_integral(m0, table, m0) / (2.0 * kPi);  // (m0, G_k * m0)
      c.s = c.t_sq * c.k_sq * c.k_sq * q / (2.0 * kPi);
    }
    cumulative -= c.s;
    c.cumulative = cumulative;
    r.per_mode.push_back(c);
  }
  r.w = cumulative;
  finish(r, basis, opt);
  return r;
}

SpectralResult w1_fourier(const Field2D& m0, const TransverseBasis& basis, const AsymptoticOptions& opt) {
  SpectralResult r;
  r.route = "fourier";
  r.boundary_diagnostic = m0.ring_max_abs(1);
  const PowerSpectrum spec = power_spectrum(m0, opt.pad_factor);
  const SpectrumMoments mom = moments(spec);
  r.m0_norm_sq = mom.p0;
  r.grad_m0_norm_sq = mom.p2;
  // keep only frequencies carrying non-negligible power
  double pmax = 0.0;
  for (double p : spec.power) pmax = std::max(pmax, p);
  std::vector<double> om, wp;
  for (std::size_t i = 0; i < spec.power.size(); ++i) {
    if (spec.power[i] > 1e-34 * pmax) {
      om.push_back(spec.omega_sq[i]);
      wp.push_back(spec.weight[i] * spec.power[i] * spec.d_area);
    }
  }
  double cumulative = 0.0;
  for (int j = 2; j <= basis.modes(); ++j) {
    ModeContribution c;
    c.j = j;
    c.k_sq = basis.k_sq(j);
    c.t_sq = basis.overlap(j) * basis.overlap(j);
    if (c.t_sq > 0.0) {
      double integral = 0.0;
      for (std::size_t i = 0; i < om.size(); ++i) integral += wp[i] / (om[i] + c.k_sq);
      c.s = c.t_sq * c.k_sq * c.k_sq * integral / (2.0 * kPi);
    }
    cumulative -= c.s;
    c.cumulative = cumulative;
    r.per_mode.push_back(c);
  }
  r.w = cumulative;
  finish(r, basis, opt);
  return r;
}

IntermediateResult w1_intermediate(const MeanCurvatureFields& f, const TransverseBasis& basis) {
  IntermediateResult r;
  const Grid2D& grid = f.m0.grid();
  Field2D a(grid), b(grid), c(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    a[p] = f.k0[p] - f.m0[p] * f.m0[p];
    b[p] = 0.5 * f.lap_k0[p] - f.grad_m0_sq[p] - 2.0 * f.m0[p] * f.lap_m0[p];
    c[p] = f.m0[p] * f.lap_m0[p] + f.grad_m0_sq[p];
  }
  r.curvature_term = integrate(a);
  r.gradient_term = basis.u_norm_sq() * integrate(b);
  r.green_residual = integrate(c);
  r.integral_k0 = integrate(f.k0);
  const bool zero = f.lap_m0.max_abs() == 0.0;
  double mode_sum = 0.0;
  double cumulative = 0.0;
  for (int j = 2; j <= basis.modes(); ++j) {
    ModeContribution m;
    m.j = j;
    m.k_sq = basis.k_sq(j);
    m.t_sq = basis.overlap(j) * basis.overlap(j);
    if (m.t_sq > 0.0 && !zero) {
      const KernelTable table = bessel_k0_table(grid, std::sqrt(m.k_sq), DiagonalRule::MassMatched);
      m.s = m.t_sq * double_integral(f.lap_m0, table, f.lap_m0) / (2.0 * kPi);
    }
    mode_sum += m.s;
    cumulative -= m.s / (2.0 * kPi);
    m.cumulative = cumulative;
    r.per_mode.push_back(m);
  }
  r.mode_term = -mode_sum;
  r.w = (r.curvature_term + r.gradient_term + r.mode_term) / (2.0 * kPi);
  return r;
}

ThinLayerResult w1_thin(const Field2D& m0, double d, const TransverseBasis* basis, int pad_factor) {
  if (d < 0.0) throw std::invalid_argument("w1_thin: width must be non-negative");
  ThinLayerResult r;
  const PowerSpectrum spec = power_spectrum(m0, pad_factor);
  const SpectrumMoments mom = moments(spec);
  r.m0_norm_sq = mom.p0;
  r.grad_m0_norm_sq = mom.p2;
  r.leading = -mom.p0 / (2.0 * kPi);
  r.d2_term = (kPi * kPi - 6.0) * d * d * mom.p2 / (24.0 * kPi * kPi * kPi);
  if (basis) {
    double third = 0.0;
    for (int j = 2; j <= basis->modes(); ++j) {
      const double t = basis->overlap(j);
      if (t == 0.0) continue;
      const double k2 = basis->k_sq(j);
      double integral = 0.0;
      for (std::size_t i = 0; i < spec.power.size(); ++i) {
        const double w2 = spec.omega_sq[i];
        integral += spec.weight[i] * spec.power[i] * spec.d_area * w2 * w2 / (w2 + k2);
      }
      third += t * t * integral;
    }
    r.has_full = true;
    r.full = -(mom.p0 - basis->u_norm_sq() * mom.p2 + third) / (2.0 * kPi);
  }
  return r;
}

}  // namespace curvlayer
