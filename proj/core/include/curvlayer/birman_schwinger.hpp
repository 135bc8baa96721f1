#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvlayer/asymptotics.hpp"
#include "curvlayer/fft.hpp"
#include "curvlayer/kernels.hpp"
#include "curvlayer/planar_schrodinger.hpp"

namespace curvlayer {

class NoResolvableRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SignClass { NonPositive, NonNegative, Indefinite, Zero };

// Discretised Birman-Schwinger operator on grid nodes x N transverse modes.
// Vectors are mode-major: entry (j, p) at (j - 1) * n + p. Quadrature weights
// enter symmetrically as sqrt(w_p) on both sides. Pointwise factors are
// X = |V|^{1/2} and Y = V^{1/2}, matrix functions of the projected V(x).
class BSOperator {
 public:
  explicit BSOperator(const ModeProjectedPotential& proj);
  ~BSOperator();

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(modes_) * n_; }
  int modes() const { return modes_; }
  SignClass sign_class() const { return sign_; }

  // Kernels for w < 0, i.e. k1 = exp(1/w); s = k1^2.
  void set_w(double w);
  void set_s(double s);
  double s() const { return s_; }
  double k1() const { return std::sqrt(s_); }

  // M = A + B (regular part), K = L + M (full truncated kernel).
  void apply_M(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  void apply_K(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  void apply_MT(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  // G sandwiched by X on both sides (symmetric); equals -K for V <= 0.
  void apply_XGX(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;

  const Eigen::VectorXd& psi_x() const { return psi_x_; }
  const Eigen::VectorXd& psi_y() const { return psi_y_; }

  // Pointwise factors at node p (N x N).
  const Eigen::MatrixXd& X(std::size_t p) const { return x_[p]; }
  const Eigen::MatrixXd& Y(std::size_t p) const { return y_[p]; }
  const std::vector<double>& sqrt_weights() const { return sqrt_w_; }
  const Grid2D& grid() const { return grid_; }
  const TransverseBasis& basis() const { return basis_; }

 private:
  enum class Left { X, Y };
  void sandwich(const Eigen::VectorXd& in, Eigen::VectorXd& out, bool full, Left left, bool right_x) const;

  TransverseBasis basis_;
  Grid2D grid_;
  int modes_;
  std::size_t n_;
  SignClass sign_ = SignClass::Zero;
  std::vector<Eigen::MatrixXd> x_, y_;
  std::vector<double> sqrt_w_;
  Eigen::VectorXd psi_x_, psi_y_;
  double s_ = -1.0;
  std::unique_ptr<LinearConvolver> conv_;
  std::vector<KernelSpectrum> regular_;  // mode 1: A kernel; j >= 2: B kernels
  KernelSpectrum full_first_;            // mode 1: K0(k1 r) / 2 pi
  mutable Eigen::VectorXd scratch_in_, scratch_out_;
};

// Dense kernel matrices on a small grid (at most 4096 unknowns).
struct BSKernelSet {
  double w = 0.0;
  double lambda = 0.0;
  double k1 = 0.0;
  Eigen::MatrixXd L, A, B;
  Eigen::VectorXd psi_x, psi_y;
};

BSKernelSet assemble_M(double w, double lambda, const ModeProjectedPotential& proj);
// |V|^{1/2} R0 V^{1/2} truncated at N, assembled from K0(k_j(alpha) r) directly.
Eigen::MatrixXd assemble_direct(double w, const ModeProjectedPotential& proj);

struct BSOptions {
  double tol = 1e-12;          // fixed-point / root tolerance (relative)
  double linear_tol = 1e-14;   // GMRES relative residual
  int max_iterations = 200;
  double eigen_tol = 1e-11;
  int krylov_dim = 50;
  double min_log_gap = -30.0;  // resolvable range of the root finder
};

struct BSIteration {
  int iteration = 0;
  double w = 0.0;
  double F = 0.0;
  double residual = 0.0;
  double contraction = 0.0;
};

struct BSResult {
  std::string method;
  double w_star = 0.0;
  double alpha_star = 0.0;
  double E = 0.0;
  double log_gap = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double contraction = 0.0;  // |dF/dw| at the solution
  bool unique = false;       // contraction < 1
  double condition_estimate = 0.0;
  std::vector<BSIteration> history;
};

// F(lambda, w) = (lambda / 2 pi) <psi_y, (I + lambda M)^{-1} psi_x>.
double bs_F(BSOperator& op, double lambda, double w, const BSOptions& opt = {}, Eigen::VectorXd* warm = nullptr);

// Fixed-point iteration w <- F(lambda, w). Starts from (lambda / 2 pi) int V11
// unless w_start < 0 is given; the zero-mean case starts from the two-term
// expansion. Throws NoBoundState when an iterate reaches [0, inf).
BSResult solve_implicit(double lambda, const ModeProjectedPotential& proj, const BSOptions& opt = {},
                        double w_start = 0.0);

// Most negative eigenvalue of K(alpha) at s = k1(alpha)^2.
double bs_mu(BSOperator& op, double s, const BSOptions& opt, Eigen::VectorXd* warm = nullptr);

// Root of lambda mu(alpha) + 1 = 0, bracketed in log s. Throws
// NoResolvableRoot when there is no sign change within the resolvable range.
BSResult bs_eigen_rootfind(double lambda, const ModeProjectedPotential& proj, const BSOptions& opt = {});

}  // namespace curvlayer
