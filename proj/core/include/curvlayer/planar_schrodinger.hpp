#pragma once

#include <string>
#include <vector>

#include "curvlayer/grid.hpp"
#include "curvlayer/potentials.hpp"
#include "curvlayer/transverse.hpp"

namespace curvlayer {

// Transverse projections V_{jj'}(x) = (chi_j, V(x, .) chi_j') for j, j' <= N.
class ModeProjectedPotential {
 public:
  ModeProjectedPotential(const TransverseBasis& basis, const Grid2D& grid);

  const TransverseBasis& basis() const { return basis_; }
  const Grid2D& grid() const { return grid_; }
  int modes() const { return basis_.modes(); }

  // 1-based mode indices, symmetric storage.
  const Field2D& V(int j, int jp) const { return fields_[slot(j, jp)]; }
  Field2D& V(int j, int jp) { return fields_[slot(j, jp)]; }

  bool symmetric = true;
  double decay_exponent = 2.0;
  double boundary_diagnostic = 0.0;  // max |V_jj'| on the outer node ring

 private:
  std::size_t slot(int j, int jp) const;
  TransverseBasis basis_;
  Grid2D grid_;
  std::vector<Field2D> fields_;
};

// Gauss-Legendre projection with nu >= 2N nodes. Analytic potentials are
// evaluated on `grid`; sampled potentials use their own grid and u-rule (the
// rule must live on (-a, a) and have at least 2N nodes).
ModeProjectedPotential project_potential(const PotentialSpec& V, const TransverseBasis& basis, const Grid2D& grid,
                                         int nu);

enum class ExistenceVerdict { BoundState, NoBoundState };
std::string to_string(ExistenceVerdict v);

struct ExpansionTerms {
  double integral_v11 = 0.0;
  double first = 0.0;      // (lambda / 2 pi) int V11
  double log_term = 0.0;   // double integral of V11 (gamma_E + ln(r/2)) V11
  std::vector<double> mode_terms;  // double integral of V1j K0(k_j r) Vj1, index j - 2
  int modes_used = 1;
  double second = 0.0;     // (lambda / 2 pi)^2 [log_term - sum mode_terms]
  double w = 0.0;
  bool zero_mean = false;  // |int V11| below 1e-12 of the first-row L1 mass
  ExistenceVerdict verdict = ExistenceVerdict::NoBoundState;
  std::string message;
};

// Two-term weak-coupling expansion. The higher-mode sum stops once j >= 8
// and the last two terms are below 1e-6 of the running sum, or at j = N.
ExpansionTerms expansion_w(double lambda, const ModeProjectedPotential& proj);

// (2 pi)^2 int |V^(omega)|^2 / (|omega|^2 + k^2) d omega with
// V^ = (2 pi)^{-3/2} int V e^{-i omega x} dx; equals the double integral of V K0(k r) V.
double fourier_mode_term(const Field2D& v, double k, int pad_factor = 2);

}  // namespace curvlayer
