#pragma once

#include <Eigen/Dense>
#include <functional>

namespace curvlayer {

using LinearMap = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Restarted GMRES(m) for A x = b with x0 as initial guess (overwritten).
SolveReport gmres(const LinearMap& A, const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol = 1e-13,
                  int restart = 60, int max_iterations = 2000);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;  // ||A v - value v|| with ||v|| = 1
  int iterations = 0;     // operator applications
  bool converged = false;
};

enum class Extreme { Largest, Smallest };

// Restarted Lanczos with full reorthogonalisation for an extreme eigenvalue
// of a symmetric operator. start may be empty (a fixed deterministic vector is used).
EigenPair lanczos_extreme(const LinearMap& A, Eigen::Index n, Extreme which, const Eigen::VectorXd& start,
                          double tol = 1e-10, int krylov_dim = 50, int max_restarts = 200);

// Restarted Arnoldi for the eigenvalue with the smallest real part of a
// general operator (imaginary parts are dropped; the target is real).
EigenPair arnoldi_smallest_real(const LinearMap& A, Eigen::Index n, const Eigen::VectorXd& start,
                                double tol = 1e-10, int krylov_dim = 50, int max_restarts = 200);

// Single-vector LOBPCG for the smallest eigenvalue of a symmetric operator,
// with a preconditioner T(shift) applied to residuals.
using Preconditioner = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out, double shift)>;
EigenPair lobpcg_smallest(const LinearMap& A, const Preconditioner& T, const Eigen::VectorXd& start,
                          double tol, int max_iterations, double shift_cap);

}  // namespace curvlayer
