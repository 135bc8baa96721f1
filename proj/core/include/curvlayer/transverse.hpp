#pragma once

#include <vector>

namespace curvlayer {

// Dirichlet eigenbasis of the interval (-a, a):
//   chi_j(u) = a^{-1/2} sin(j pi (u + a) / (2a)),  kappa_j = j pi / (2a),
// together with the overlaps T_j = (chi_1, u chi_j).
class TransverseBasis {
 public:
  TransverseBasis(double a, int modes);

  double half_width() const { return a_; }
  double width() const { return 2.0 * a_; }
  int modes() const { return modes_; }

  double kappa(int j) const;
  double kappa_sq(int j) const;
  // k_j^2 = kappa_j^2 - kappa_1^2 (zero for j = 1).
  double k_sq(int j) const;
  double overlap(int j) const;
  double chi(int j, double u) const;

  // ||u chi_1||^2 = (pi^2 - 6) / (12 kappa_1^2); the full Parseval sum of T_j^2.
  double u_norm_sq() const;

 private:
  double a_;
  int modes_;
  std::vector<double> overlap_;  // index j-1
};

TransverseBasis build_basis(double a, int modes);

// T_j in closed form (integration by parts): zero for odd j, and
// -16 a j / (pi^2 (j^2 - 1)^2) for even j.
double overlap_closed_form(double a, int j);

struct OverlapSums {
  double s0 = 0.0;  // sum_{j=2..N} T_j^2
  double s2 = 0.0;  // sum_{j=2..N} T_j^2 k_j^2
  double s0_target = 0.0;
  double s2_target = 1.0;
  double s0_deficit = 0.0;
  double s2_deficit = 0.0;
};

OverlapSums overlap_sums(const TransverseBasis& basis);

}  // namespace curvlayer
