#pragma once

#include <array>
#include <string>
#include <vector>

#include "curvlayer/grid.hpp"
#include "curvlayer/quadrature.hpp"
#include "curvlayer/surfaces.hpp"

namespace curvlayer {

// Partial derivatives of the height profile f up to fourth order on a grid.
// partial(n1, n2) is d^{n1+n2} f / dx1^{n1} dx2^{n2}; symmetry in the index
// order is built into the (n1, n2) addressing.
class SurfaceJet {
 public:
  explicit SurfaceJet(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  const Field2D& partial(int n1, int n2) const { return fields_[slot(n1, n2)]; }
  Field2D& partial(int n1, int n2) { return fields_[slot(n1, n2)]; }

  // max(|f|, |grad f|) near the boundary; see build_surface_jet.
  double boundary_diagnostic = 0.0;
  bool sampled = false;

 private:
  static int slot(int n1, int n2);
  Grid2D grid_;
  std::array<Field2D, 15> fields_;
};

// Exact derivatives at the nodes. The diagnostic is taken over the outer
// four-node ring.
SurfaceJet build_surface_jet(const AnalyticSurface& surface, const Grid2D& grid);
// Central differences (9-point stencils, order >= 6 for every derivative).
// The outer four-node ring has no stencil support and is set to zero; the
// diagnostic combines |f| on that ring with |grad f| on the first supported ring.
SurfaceJet build_surface_jet(const Field2D& samples);

struct CurvatureBundle {
  double eps = 0.0;
  double boundary_diagnostic = 0.0;
  Field2D k0, m0, m1, g, K, M;
  Field2D kappa1, kappa2;  // principal curvatures, kappa1 >= kappa2
  Field2D grad_sq;         // f_1^2 + f_2^2
};

CurvatureBundle curvatures(const SurfaceJet& jet, double eps);

struct LayerConstants {
  double a = 0.0;
  double eps = 0.0;
  double eta_inf = 0.0;
  double rho_m_inv = 0.0;
  double c_minus = 1.0, c_plus = 1.0;
  double C_minus = 1.0, C_plus = 1.0;
  double sigma_minus = 1.0, sigma_plus = 1.0;
};

// Throws std::domain_error when a * rho_m_inv >= 1 (the layer map is not a
// diffeomorphism) or when the metric bound c_minus is not positive.
LayerConstants layer_constants(const CurvatureBundle& bundle, double a);
LayerConstants layer_constants_from(double a, double eps, double eta_inf, double rho_m_inv);

// Curvature-induced potentials sampled on grid x u_nodes.
// Value (p, iu) sits at index iu * grid.size() + p.
struct EffectivePotentialField {
  Grid2D grid;
  QuadratureRule u_rule;
  double a = 0.0;
  double eps = 0.0;
  LayerConstants constants;
  std::vector<double> v1, V2, V_plus, V_minus;

  std::size_t index(std::size_t p, int iu) const { return static_cast<std::size_t>(iu) * grid.size() + p; }
};

EffectivePotentialField effective_potentials(const SurfaceJet& jet, const CurvatureBundle& bundle, double a,
                                             const QuadratureRule& u_rule);

struct GaussCurvatureTotals {
  double total = 0.0;        // integral of K g^{1/2} dx
  double integral_k0 = 0.0;  // integral of k0 dx
  bool trusted = true;
  std::string warning;
};

GaussCurvatureTotals total_gauss_curvature(const CurvatureBundle& bundle, double decay_threshold = 1e-8);

// Leading-order mean-curvature data used by the asymptotic formulas.
struct MeanCurvatureFields {
  Field2D k0, m0, grad_m0_sq, lap_m0, lap_k0;
};

MeanCurvatureFields leading_order_fields(const SurfaceJet& jet);

// Surface metric at node p: lower = (g11, g12, g22), upper = inverse.
struct MetricAt {
  std::array<double, 3> lower;
  std::array<double, 3> upper;
};
MetricAt metric_at(const SurfaceJet& jet, double eps, std::size_t p);

}  // namespace curvlayer
