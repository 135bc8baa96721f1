#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "curvlayer/grid.hpp"

namespace curvlayer {

// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
int good_fft_size(int n);

// Fourier data of a kernel prepared for one LinearConvolver.
struct KernelSpectrum {
  std::vector<std::complex<double>> data;
};

// Aperiodic 2D convolution on an nx x ny node lattice via zero-padded
// real FFTs. Kernels are tabulated on every lattice offset:
//   table[(di + nx - 1) + (dj + ny - 1) * (2 nx - 1)] = k(di, dj).
// Plans use FFTW_ESTIMATE so results do not depend on timing. Instances hold
// scratch buffers and must not be shared across threads.
class LinearConvolver {
 public:
  LinearConvolver(int nx, int ny);
  ~LinearConvolver();
  LinearConvolver(const LinearConvolver&) = delete;
  LinearConvolver& operator=(const LinearConvolver&) = delete;

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int padded_x() const { return px_; }
  int padded_y() const { return py_; }

  KernelSpectrum transform_kernel(const std::vector<double>& table) const;
  // out[p] = sum_q k(p - q) in[q]
  void apply(const KernelSpectrum& kernel, const double* in, double* out) const;

 private:
  struct Plans;
  int nx_, ny_, px_, py_;
  std::unique_ptr<Plans> plans_;
};

// Samples of |m~(omega)|^2 with m~(omega) = (2 pi)^{-1} sum_x h^2 m(x) e^{-i omega x},
// on the lattice of a zero-padded transform. Each entry carries its weight
// (2 for the folded half of a real transform), and d_area is the frequency
// cell area, so that sum weight * power * d_area approximates the integral.
struct PowerSpectrum {
  std::vector<double> omega_sq;
  std::vector<double> power;
  std::vector<double> weight;
  double d_area = 0.0;
};

PowerSpectrum power_spectrum(const Field2D& f, int pad_factor = 2);

// Solves (-Delta_h + shift) x = rhs for the 5-point Laplacian with homogeneous
// Dirichlet data on an nx x ny interior lattice of spacing h (sine transforms).
class DirichletPoissonSolver {
 public:
  DirichletPoissonSolver(int nx, int ny, double h);
  ~DirichletPoissonSolver();
  DirichletPoissonSolver(const DirichletPoissonSolver&) = delete;
  DirichletPoissonSolver& operator=(const DirichletPoissonSolver&) = delete;

  double min_eigenvalue() const;
  void solve(const double* rhs, double* out, double shift) const;

 private:
  struct Plans;
  int nx_, ny_;
  double h_;
  std::vector<double> lam_x_, lam_y_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace curvlayer
