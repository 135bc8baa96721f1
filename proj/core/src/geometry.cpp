#include "curvlayer/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "curvlayer/jet2.hpp"
#include "curvlayer/stencil.hpp"

namespace curvlayer {

SurfaceJet::SurfaceJet(const Grid2D& grid) : grid_(grid) {
  for (auto& f : fields_) f = Field2D(grid);
}

int SurfaceJet::slot(int n1, int n2) {
  const int order = n1 + n2;
  if (n1 < 0 || n2 < 0 || order > 4) throw std::invalid_argument("SurfaceJet: derivative order must be 0..4");
  return order * (order + 1) / 2 + n2;
}

SurfaceJet build_surface_jet(const AnalyticSurface& surface, const Grid2D& grid) {
  SurfaceJet jet(grid);
  for (int order = 0; order <= 4; ++order) {
    for (int n2 = 0; n2 <= order; ++n2) {
      const int n1 = order - n2;
      Field2D& out = jet.partial(n1, n2);
      for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) out(i, j) = surface.partial(n1, n2, grid.x(i), grid.y(j));
      }
    }
  }
  const int r = kStencilRadius;
  double diag = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (!(i < r || j < r || i >= grid.nx - r || j >= grid.ny - r)) continue;
      const double grad = std::hypot(jet.partial(1, 0)(i, j), jet.partial(0, 1)(i, j));
      diag = std::max({diag, std::abs(jet.partial(0, 0)(i, j)), grad});
    }
  }
  jet.boundary_diagnostic = diag;
  jet.sampled = false;
  return jet;
}

SurfaceJet build_surface_jet(const Field2D& samples) {
  const Grid2D& grid = samples.grid();
  const int footprint = 2 * kStencilRadius + 1;
  if (grid.nx < footprint || grid.ny < footprint) {
    throw std::invalid_argument("build_surface_jet: sampled mode needs at least 9 nodes per axis");
  }
  for (double v : samples.values()) {
    if (!std::isfinite(v)) throw std::invalid_argument("build_surface_jet: non-finite sample");
  }
  SurfaceJet jet(grid);
  for (int order = 0; order <= 4; ++order) {
    for (int n2 = 0; n2 <= order; ++n2) jet.partial(order - n2, n2) = central_partial(samples, order - n2, n2);
  }
  jet.partial(0, 0) = samples;
  const int r = kStencilRadius;
  double diag = samples.ring_max_abs(r);
  for (int j = r; j < grid.ny - r; ++j) {
    for (int i = r; i < grid.nx - r; ++i) {
      const bool first_ring = i == r || j == r || i == grid.nx - r - 1 || j == grid.ny - r - 1;
      if (!first_ring) continue;
      diag = std::max(diag, std::hypot(jet.partial(1, 0)(i, j), jet.partial(0, 1)(i, j)));
    }
  }
  jet.boundary_diagnostic = diag;
  jet.sampled = true;
  return jet;
}

namespace {

struct NodeJets {
  Jet2 f1, f2, f11, f12, f22;
};

NodeJets node_jets(const SurfaceJet& jet, std::size_t p) {
  auto d = [&](int n1, int n2) { return jet.partial(n1, n2)[p]; };
  NodeJets n;
  n.f1 = {d(1, 0), {d(2, 0), d(1, 1)}, {d(3, 0), d(2, 1), d(1, 2)}};
  n.f2 = {d(0, 1), {d(1, 1), d(0, 2)}, {d(2, 1), d(1, 2), d(0, 3)}};
  n.f11 = {d(2, 0), {d(3, 0), d(2, 1)}, {d(4, 0), d(3, 1), d(2, 2)}};
  n.f12 = {d(1, 1), {d(2, 1), d(1, 2)}, {d(3, 1), d(2, 2), d(1, 3)}};
  n.f22 = {d(0, 2), {d(1, 2), d(0, 3)}, {d(2, 2), d(1, 3), d(0, 4)}};
  return n;
}

struct CurvatureJets {
  Jet2 g, K, M;
  Jet2 ginv11, ginv12, ginv22;
};

CurvatureJets curvature_jets(const NodeJets& n, double eps) {
  const double e2 = eps * eps;
  CurvatureJets c;
  const Jet2 f1sq = n.f1 * n.f1;
  const Jet2 f2sq = n.f2 * n.f2;
  c.g = 1.0 + e2 * (f1sq + f2sq);
  const Jet2 k0 = n.f11 * n.f22 - n.f12 * n.f12;
  const Jet2 m0 = 0.5 * (n.f11 + n.f22);
  const Jet2 m1 = 0.5 * (f1sq * n.f22 + f2sq * n.f11 - 2.0 * (n.f1 * n.f2 * n.f12));
  const Jet2 ginv = reciprocal(c.g);
  c.K = e2 * (k0 * ginv * ginv);
  c.M = eps * (pow(c.g, -1.5) * (m0 + e2 * m1));
  c.ginv11 = ginv * (1.0 + e2 * f2sq);
  c.ginv12 = -e2 * (ginv * (n.f1 * n.f2));
  c.ginv22 = ginv * (1.0 + e2 * f1sq);
  return c;
}

struct SurfaceOperators {
  double lap_K = 0.0, lap_M = 0.0;
  std::array<double, 2> dK{}, dM{};
  std::array<double, 3> ginv{};
};

// Laplace-Beltrami in component form:
//   g^{mn} phi_{mn} + (d_m g^{mn}) phi_n + g^{mn} phi_n d_m ln sqrt(g)
double laplace_beltrami(const CurvatureJets& c, const Jet2& phi) {
  const double u11 = c.ginv11.v, u12 = c.ginv12.v, u22 = c.ginv22.v;
  const double div1 = c.ginv11.g[0] + c.ginv12.g[1];
  const double div2 = c.ginv12.g[0] + c.ginv22.g[1];
  const double l1 = 0.5 * c.g.g[0] / c.g.v;
  const double l2 = 0.5 * c.g.g[1] / c.g.v;
  const double p1 = phi.g[0], p2 = phi.g[1];
  return u11 * phi.h[0] + 2.0 * u12 * phi.h[1] + u22 * phi.h[2] + div1 * p1 + div2 * p2 + (u11 * p1 + u12 * p2) * l1 +
         (u12 * p1 + u22 * p2) * l2;
}

}  // namespace

CurvatureBundle curvatures(const SurfaceJet& jet, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("curvatures: eps must be positive");
  const Grid2D& grid = jet.grid();
  CurvatureBundle b;
  b.eps = eps;
  b.boundary_diagnostic = jet.boundary_diagnostic;
  for (Field2D* f : {&b.k0, &b.m0, &b.m1, &b.g, &b.K, &b.M, &b.kappa1, &b.kappa2, &b.grad_sq}) *f = Field2D(grid);
  const double e2 = eps * eps;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double f1 = jet.partial(1, 0)[p], f2 = jet.partial(0, 1)[p];
    const double f11 = jet.partial(2, 0)[p], f12 = jet.partial(1, 1)[p], f22 = jet.partial(0, 2)[p];
    const double grad_sq = f1 * f1 + f2 * f2;
    const double k0 = f11 * f22 - f12 * f12;
    const double m0 = 0.5 * (f11 + f22);
    const double m1 = 0.5 * (f1 * f1 * f22 + f2 * f2 * f11 - 2.0 * f1 * f2 * f12);
    const double g = 1.0 + e2 * grad_sq;
    b.grad_sq[p] = grad_sq;
    b.k0[p] = k0;
    b.m0[p] = m0;
    b.m1[p] = m1;
    b.g[p] = g;
    b.K[p] = e2 * k0 / (g * g);
    b.M[p] = eps * std::pow(g, -1.5) * (m0 + e2 * m1);

    // Weingarten map h = eps g^{-3/2} theta (I + eps^2 eta~)
    const double s = eps * std::pow(g, -1.5);
    const double e11 = 1.0 + e2 * f2 * f2, e12 = -e2 * f1 * f2, e22 = 1.0 + e2 * f1 * f1;
    const double w11 = s * (f11 * e11 + f12 * e12);
    const double w12 = s * (f11 * e12 + f12 * e22);
    const double w21 = s * (f12 * e11 + f22 * e12);
    const double w22 = s * (f12 * e12 + f22 * e22);
    const double half_trace = 0.5 * (w11 + w22);
    const double half_diff = 0.5 * (w11 - w22);
    const double disc = std::sqrt(std::max(0.0, half_diff * half_diff + w12 * w21));
    b.kappa1[p] = half_trace + disc;
    b.kappa2[p] = half_trace - disc;
  }
  return b;
}

LayerConstants layer_constants_from(double a, double eps, double eta_inf, double rho_m_inv) {
  if (!(a > 0.0)) throw std::invalid_argument("layer_constants: half-width must be positive");
  if (a * rho_m_inv >= 1.0) {
    throw std::domain_error("layer_constants: a * max|principal curvature| = " + std::to_string(a * rho_m_inv) +
                            " >= 1, the layer map is not a diffeomorphism at this eps and a");
  }
  LayerConstants c;
  c.a = a;
  c.eps = eps;
  c.eta_inf = eta_inf;
  c.rho_m_inv = rho_m_inv;
  c.c_minus = 1.0 - eps * eps * eta_inf;
  c.c_plus = 1.0 + eps * eps * eta_inf;
  if (!(c.c_minus > 0.0)) {
    throw std::domain_error("layer_constants: eps^2 sup|grad f|^2 >= 1, metric bound c_- is not positive");
  }
  c.C_minus = (1.0 - a * rho_m_inv) * (1.0 - a * rho_m_inv);
  c.C_plus = (1.0 + a * rho_m_inv) * (1.0 + a * rho_m_inv);
  c.sigma_minus = std::sqrt(std::pow(c.c_plus, 3) * c.C_plus * c.C_plus / (c.c_minus * c.c_minus * c.C_minus));
  c.sigma_plus = std::sqrt(std::pow(c.c_minus, 3) * c.C_minus * c.C_minus / (c.c_plus * c.c_plus * c.C_plus));
  return c;
}

LayerConstants layer_constants(const CurvatureBundle& bundle, double a) {
  double eta = 0.0, rho = 0.0;
  for (std::size_t p = 0; p < bundle.g.size(); ++p) {
    eta = std::max(eta, bundle.grad_sq[p]);
    rho = std::max({rho, std::abs(bundle.kappa1[p]), std::abs(bundle.kappa2[p])});
  }
  return layer_constants_from(a, bundle.eps, eta, rho);
}

EffectivePotentialField effective_potentials(const SurfaceJet& jet, const CurvatureBundle& bundle, double a,
                                             const QuadratureRule& u_rule) {
  const Grid2D& grid = jet.grid();
  const double eps = bundle.eps;
  EffectivePotentialField out;
  out.grid = grid;
  out.u_rule = u_rule;
  out.a = a;
  out.eps = eps;
  out.constants = layer_constants(bundle, a);
  for (double u : u_rule.nodes) {
    if (!(std::abs(u) < a)) throw std::invalid_argument("effective_potentials: u nodes must lie in (-a, a)");
  }
  const std::size_t n = grid.size();
  const int nu = static_cast<int>(u_rule.nodes.size());
  out.v1.assign(n * nu, 0.0);
  out.V2.assign(n * nu, 0.0);

  for (std::size_t p = 0; p < n; ++p) {
    const CurvatureJets c = curvature_jets(node_jets(jet, p), eps);
    const double K = c.K.v, M = c.M.v;
    const double lapK = laplace_beltrami(c, c.K);
    const double lapM = laplace_beltrami(c, c.M);
    for (int iu = 0; iu < nu; ++iu) {
      const double u = u_rule.nodes[iu];
      const double D = 1.0 - 2.0 * M * u + K * u * u;
      if (!(D > 0.0)) {
        throw std::domain_error("effective_potentials: 1 - 2Mu + Ku^2 <= 0, layer map degenerates");
      }
      const double w1 = u * u * c.K.g[0] - 2.0 * u * c.M.g[0];
      const double w2 = u * u * c.K.g[1] - 2.0 * u * c.M.g[1];
      const double wnorm = c.ginv11.v * w1 * w1 + 2.0 * c.ginv12.v * w1 * w2 + c.ginv22.v * w2 * w2;
      out.v1[out.index(p, iu)] = -wnorm / (4.0 * D * D) + (u * u * lapK - 2.0 * u * lapM) / (2.0 * D);
      out.V2[out.index(p, iu)] = (K - M * M) / (D * D);
    }
  }

  const LayerConstants& lc = out.constants;
  out.V_plus.assign(n * nu, 0.0);
  out.V_minus.assign(n * nu, 0.0);
  Field2D combined_plus(grid), combined_minus(grid);
  for (int iu = 0; iu < nu; ++iu) {
    for (std::size_t p = 0; p < n; ++p) {
      const double v1 = out.v1[out.index(p, iu)], v2 = out.V2[out.index(p, iu)];
      combined_plus[p] = (lc.C_plus / (lc.C_minus * lc.C_minus) * v1 + v2) / eps;
      combined_minus[p] = (lc.C_minus / (lc.C_plus * lc.C_plus) * v1 + v2) / eps;
    }
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const std::size_t p = grid.index(i, j);
        out.V_plus[out.index(p, iu)] =
            bilinear(combined_plus, grid.x(i) / lc.sigma_plus, grid.y(j) / lc.sigma_plus);
        out.V_minus[out.index(p, iu)] =
            bilinear(combined_minus, grid.x(i) / lc.sigma_minus, grid.y(j) / lc.sigma_minus);
      }
    }
  }
  return out;
}

GaussCurvatureTotals total_gauss_curvature(const CurvatureBundle& bundle, double decay_threshold) {
  GaussCurvatureTotals t;
  Field2D density(bundle.K.grid());
  for (std::size_t p = 0; p < density.size(); ++p) density[p] = bundle.K[p] * std::sqrt(bundle.g[p]);
  t.total = integrate(density);
  t.integral_k0 = integrate(bundle.k0);
  if (bundle.boundary_diagnostic > decay_threshold) {
    t.trusted = false;
    t.warning = "surface has not decayed at the grid boundary (diagnostic " +
                std::to_string(bundle.boundary_diagnostic) + "), total curvature untrusted";
  }
  return t;
}

MeanCurvatureFields leading_order_fields(const SurfaceJet& jet) {
  const Grid2D& grid = jet.grid();
  MeanCurvatureFields m;
  for (Field2D* f : {&m.k0, &m.m0, &m.grad_m0_sq, &m.lap_m0, &m.lap_k0}) *f = Field2D(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    auto d = [&](int n1, int n2) { return jet.partial(n1, n2)[p]; };
    const double f11 = d(2, 0), f12 = d(1, 1), f22 = d(0, 2);
    const double f111 = d(3, 0), f112 = d(2, 1), f122 = d(1, 2), f222 = d(0, 3);
    const double f1111 = d(4, 0), f1112 = d(3, 1), f1122 = d(2, 2), f1222 = d(1, 3), f2222 = d(0, 4);
    m.k0[p] = f11 * f22 - f12 * f12;
    m.m0[p] = 0.5 * (f11 + f22);
    const double gx = 0.5 * (f111 + f122), gy = 0.5 * (f112 + f222);
    m.grad_m0_sq[p] = gx * gx + gy * gy;
    m.lap_m0[p] = 0.5 * (f1111 + 2.0 * f1122 + f2222);
    const double k0_11 = f1111 * f22 + 2.0 * f111 * f122 + f11 * f1122 - 2.0 * f112 * f112 - 2.0 * f12 * f1112;
    const double k0_22 = f1122 * f22 + 2.0 * f112 * f222 + f11 * f2222 - 2.0 * f122 * f122 - 2.0 * f12 * f1222;
    m.lap_k0[p] = k0_11 + k0_22;
  }
  return m;
}

MetricAt metric_at(const SurfaceJet& jet, double eps, std::size_t p) {
  const double f1 = jet.partial(1, 0)[p], f2 = jet.partial(0, 1)[p];
  const double e2 = eps * eps;
  const double g = 1.0 + e2 * (f1 * f1 + f2 * f2);
  MetricAt m;
  m.lower = {1.0 + e2 * f1 * f1, e2 * f1 * f2, 1.0 + e2 * f2 * f2};
  m.upper = {(1.0 + e2 * f2 * f2) / g, -e2 * f1 * f2 / g, (1.0 + e2 * f1 * f1) / g};
  return m;
}

}  // namespace curvlayer
