#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvlayer/geometry.hpp"
#include "curvlayer/grid.hpp"
#include "curvlayer/transverse.hpp"

namespace curvlayer {

class NoBoundState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// E = kappa1^2 - exp(2/w), carried through log(gap) = 2/w.
struct EnergyMap {
  double E = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  double log_gap = std::numeric_limits<double>::quiet_NaN();
  bool gap_underflow = false;  // gap <= 1e-300: E is reported as kappa1^2
};

// Throws NoBoundState when w >= 0.
EnergyMap energy_from_w(double w, double kappa1);

struct ModeContribution {
  int j = 0;
  double k_sq = 0.0;
  double t_sq = 0.0;
  double s = 0.0;           // contribution to -w (>= 0 for the mode-sum routes)
  double cumulative = 0.0;  // partial sum of w up to this mode
};

struct AsymptoticOptions {
  double decay_exponent = 2.0;     // declared delta of the surface; order gamma = min(1, delta/2)
  double boundary_threshold = 1e-8;
  int pad_factor = 2;
};

struct SpectralResult {
  std::string route;
  double w = 0.0;                  // truncated mode sum over j = 2..N
  double tail_estimate = 0.0;      // analytic estimate of the modes j > N
  double w_tail_corrected = 0.0;   // w + tail_estimate
  std::vector<ModeContribution> per_mode;
  double gamma_order = 1.0;
  OverlapSums deficits;
  double m0_norm_sq = 0.0;
  double grad_m0_norm_sq = 0.0;
  double cancellation_residual = 0.0;  // ||m0||^2 (1 - S2) / (2 pi)
  double boundary_diagnostic = 0.0;
  bool consistent = true;
  std::string message;
  EnergyMap energy;  // filled by attach_energy
};

// Maps eps^2 w (or lambda-type scale) to an energy and stores it in r.energy.
void attach_energy(SpectralResult& r, double scale, double kappa1, bool use_tail_corrected = true);

SpectralResult w1_realspace(const Field2D& m0, const TransverseBasis& basis, const AsymptoticOptions& opt = {});
SpectralResult w1_fourier(const Field2D& m0, const TransverseBasis& basis, const AsymptoticOptions& opt = {});

struct IntermediateResult {
  double w = 0.0;
  double curvature_term = 0.0;   // integral of (k0 - m0^2)
  double gradient_term = 0.0;    // ||u chi_1||^2 integral of (lap k0 / 2 - |grad m0|^2 - 2 m0 lap m0)
  double mode_term = 0.0;        // -(2 pi)^{-1} sum_j T_j^2 double integral of lap m0 K0 lap m0
  double green_residual = 0.0;   // integral of m0 lap m0 + |grad m0|^2
  double integral_k0 = 0.0;
  std::vector<ModeContribution> per_mode;
};

IntermediateResult w1_intermediate(const MeanCurvatureFields& fields, const TransverseBasis& basis);

struct ThinLayerResult {
  double leading = 0.0;  // -(2 pi)^{-1} ||m0||^2
  double d2_term = 0.0;  // (pi^2 - 6) d^2 ||grad m0||^2 / (24 pi^3)
  bool has_full = false;
  double full = 0.0;     // three-term form with the mode sum, when a basis is given
  double m0_norm_sq = 0.0;
  double grad_m0_norm_sq = 0.0;
};

// Norms are taken from the Fourier transform of m0.
ThinLayerResult w1_thin(const Field2D& m0, double d, const TransverseBasis* basis = nullptr, int pad_factor = 2);

}  // namespace curvlayer
