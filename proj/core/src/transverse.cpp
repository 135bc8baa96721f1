#include "curvlayer/transverse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "curvlayer/quadrature.hpp"
#include "curvlayer/specfun.hpp"

namespace curvlayer {

double overlap_closed_form(double a, int j) {
  if (j < 1) throw std::invalid_argument("overlap_closed_form: mode index starts at 1");
  if (j % 2 == 1) return 0.0;
  const double jj = static_cast<double>(j);
  const double q = jj * jj - 1.0;
  return -16.0 * a * jj / (kPi * kPi * q * q);
}

TransverseBasis::TransverseBasis(double a, int modes) : a_(a), modes_(modes) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("TransverseBasis: half-width must be positive");
  if (modes < 1) throw std::invalid_argument("TransverseBasis: need at least one mode");
  overlap_.resize(modes);
  for (int j = 1; j <= modes; ++j) overlap_[j - 1] = overlap_closed_form(a, j);

  // Cross-check the closed form against Gauss-Legendre quadrature.
  const QuadratureRule rule = gauss_legendre(modes + 48, -a, a);
  for (int j = 1; j <= modes; ++j) {
    double q = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = rule.nodes[i];
      q += rule.weights[i] * chi(1, u) * u * chi(j, u);
    }
    if (std::abs(q - overlap_[j - 1]) > 1e-12 * std::max(1.0, a)) {
      throw std::logic_error("TransverseBasis: closed-form overlap disagrees with quadrature at j = " +
                             std::to_string(j));
    }
  }
}

double TransverseBasis::kappa(int j) const { return j * kPi / (2.0 * a_); }
double TransverseBasis::kappa_sq(int j) const {
  const double k = kappa(j);
  return k * k;
}
double TransverseBasis::k_sq(int j) const {
  const double c = kPi / (2.0 * a_);
  return c * c * (static_cast<double>(j) * j - 1.0);
}

double TransverseBasis::overlap(int j) const {
  if (j < 1 || j > modes_) throw std::out_of_range("TransverseBasis::overlap: mode index out of range");
  return overlap_[j - 1];
}

double TransverseBasis::chi(int j, double u) const {
  return std::sin(j * kPi * (u + a_) / (2.0 * a_)) / std::sqrt(a_);
}

double TransverseBasis::u_norm_sq() const { return (kPi * kPi - 6.0) / (12.0 * kappa_sq(1)); }

TransverseBasis build_basis(double a, int modes) { return TransverseBasis(a, modes); }

OverlapSums overlap_sums(const TransverseBasis& basis) {
  OverlapSums s;
  for (int j = 2; j <= basis.modes(); ++j) {
    const double t2 = basis.overlap(j) * basis.overlap(j);
    s.s0 += t2;
    s.s2 += t2 * basis.k_sq(j);
  }
  const double t1 = basis.overlap(1);
  s.s0_target = basis.u_norm_sq() - t1 * t1;
  s.s2_target = 1.0;
  s.s0_deficit = s.s0_target - s.s0;
  s.s2_deficit = s.s2_target - s.s2;
  return s;
}

}  // namespace curvlayer
