#include "curvlayer/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "curvlayer/specfun.hpp"

namespace curvlayer {

int good_fft_size(int n) {
  if (n < 1) return 1;
  for (int m = n;; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

namespace {

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : ptr(fftw_alloc_real(n)), size(n) {
    if (!ptr) throw std::bad_alloc();
  }
  ~RealBuffer() { fftw_free(ptr); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* ptr;
  std::size_t size;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : ptr(fftw_alloc_complex(n)), size(n) {
    if (!ptr) throw std::bad_alloc();
  }
  ~ComplexBuffer() { fftw_free(ptr); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* ptr;
  std::size_t size;
};

}  // namespace

struct LinearConvolver::Plans {
  Plans(int px, int py)
      : real(static_cast<std::size_t>(px) * py), spec(static_cast<std::size_t>(py) * (px / 2 + 1)) {
    forward = fftw_plan_dft_r2c_2d(py, px, real.ptr, spec.ptr, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_2d(py, px, spec.ptr, real.ptr, FFTW_ESTIMATE);
    if (!forward || !backward) throw std::runtime_error("LinearConvolver: FFTW plan creation failed");
  }
  ~Plans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  RealBuffer real;
  ComplexBuffer spec;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

LinearConvolver::LinearConvolver(int nx, int ny)
    : nx_(nx), ny_(ny), px_(good_fft_size(2 * nx - 1)), py_(good_fft_size(2 * ny - 1)) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("LinearConvolver: empty lattice");
  plans_ = std::make_unique<Plans>(px_, py_);
}

LinearConvolver::~LinearConvolver() = default;

KernelSpectrum LinearConvolver::transform_kernel(const std::vector<double>& table) const {
  const int tx = 2 * nx_ - 1, ty = 2 * ny_ - 1;
  if (table.size() != static_cast<std::size_t>(tx) * ty) {
    throw std::invalid_argument("LinearConvolver: kernel table has wrong size");
  }
  double* r = plans_->real.ptr;
  std::memset(r, 0, sizeof(double) * plans_->real.size);
  for (int dj = -(ny_ - 1); dj <= ny_ - 1; ++dj) {
    const int row = (dj + py_) % py_;
    for (int di = -(nx_ - 1); di <= nx_ - 1; ++di) {
      const int col = (di + px_) % px_;
      r[static_cast<std::size_t>(row) * px_ + col] = table[(di + nx_ - 1) + static_cast<std::size_t>(dj + ny_ - 1) * tx];
    }
  }
  fftw_execute(plans_->forward);
  KernelSpectrum k;
  k.data.resize(plans_->spec.size);
  const double norm = 1.0 / (static_cast<double>(px_) * py_);
  for (std::size_t i = 0; i < plans_->spec.size; ++i) {
    k.data[i] = std::complex<double>(plans_->spec.ptr[i][0], plans_->spec.ptr[i][1]) * norm;
  }
  return k;
}

void LinearConvolver::apply(const KernelSpectrum& kernel, const double* in, double* out) const {
  if (kernel.data.size() != plans_->spec.size) throw std::invalid_argument("LinearConvolver: kernel from another lattice");
  double* r = plans_->real.ptr;
  std::memset(r, 0, sizeof(double) * plans_->real.size);
  for (int j = 0; j < ny_; ++j) std::memcpy(r + static_cast<std::size_t>(j) * px_, in + static_cast<std::size_t>(j) * nx_, sizeof(double) * nx_);
  fftw_execute(plans_->forward);
  fftw_complex* s = plans_->spec.ptr;
  for (std::size_t i = 0; i < plans_->spec.size; ++i) {
    const double a = s[i][0], b = s[i][1];
    const double c = kernel.data[i].real(), d = kernel.data[i].imag();
    s[i][0] = a * c - b * d;
    s[i][1] = a * d + b * c;
  }
  fftw_execute(plans_->backward);
  for (int j = 0; j < ny_; ++j) std::memcpy(out + static_cast<std::size_t>(j) * nx_, r + static_cast<std::size_t>(j) * px_, sizeof(double) * nx_);
}

PowerSpectrum power_spectrum(const Field2D& f, int pad_factor) {
  if (pad_factor < 2) throw std::invalid_argument("power_spectrum: zero-padding factor must be at least 2");
  const Grid2D& g = f.grid();
  const int px = good_fft_size(pad_factor * g.nx);
  const int py = good_fft_size(pad_factor * g.ny);
  const int hx = px / 2 + 1;
  RealBuffer real(static_cast<std::size_t>(px) * py);
  ComplexBuffer spec(static_cast<std::size_t>(py) * hx);
  fftw_plan plan = fftw_plan_dft_r2c_2d(py, px, real.ptr, spec.ptr, FFTW_ESTIMATE);
  if (!plan) throw std::runtime_error("power_spectrum: FFTW plan creation failed");
  std::memset(real.ptr, 0, sizeof(double) * real.size);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) real.ptr[static_cast<std::size_t>(j) * px + i] = f(i, j);
  }
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  const double scale = g.cell_area() / (2.0 * kPi);
  const double dwx = 2.0 * kPi / (px * g.hx);
  const double dwy = 2.0 * kPi / (py * g.hy);
  PowerSpectrum out;
  out.d_area = dwx * dwy;
  out.omega_sq.reserve(spec.size);
  out.power.reserve(spec.size);
  out.weight.reserve(spec.size);
  for (int j = 0; j < py; ++j) {
    const int kj = (j <= py / 2) ? j : j - py;
    const double wy = kj * dwy;
    for (int i = 0; i < hx; ++i) {
      const double wx = i * dwx;
      const std::size_t k = static_cast<std::size_t>(j) * hx + i;
      const double re = spec.ptr[k][0] * scale, im = spec.ptr[k][1] * scale;
      const bool self_conjugate = (i == 0) || (px % 2 == 0 && i == px / 2);
      out.omega_sq.push_back(wx * wx + wy * wy);
      out.power.push_back(re * re + im * im);
      out.weight.push_back(self_conjugate ? 1.0 : 2.0);
    }
  }
  return out;
}

struct DirichletPoissonSolver::Plans {
  Plans(int nx, int ny) : buf(static_cast<std::size_t>(nx) * ny) {
    plan = fftw_plan_r2r_2d(ny, nx, buf.ptr, buf.ptr, FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("DirichletPoissonSolver: FFTW plan creation failed");
  }
  ~Plans() { fftw_destroy_plan(plan); }
  RealBuffer buf;
  fftw_plan plan = nullptr;
};

DirichletPoissonSolver::DirichletPoissonSolver(int nx, int ny, double h) : nx_(nx), ny_(ny), h_(h) {
  if (nx < 1 || ny < 1 || !(h > 0.0)) throw std::invalid_argument("DirichletPoissonSolver: bad lattice");
  auto eig = [h](int n) {
    std::vector<double> lam(n);
    for (int k = 0; k < n; ++k) {
      const double s = std::sin(kPi * (k + 1) / (2.0 * (n + 1)));
      lam[k] = 4.0 * s * s / (h * h);
    }
    return lam;
  };
  lam_x_ = eig(nx);
  lam_y_ = eig(ny);
  plans_ = std::make_unique<Plans>(nx, ny);
}

DirichletPoissonSolver::~DirichletPoissonSolver() = default;

double DirichletPoissonSolver::min_eigenvalue() const { return lam_x_[0] + lam_y_[0]; }

void DirichletPoissonSolver::solve(const double* rhs, double* out, double shift) const {
  double* b = plans_->buf.ptr;
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  std::memcpy(b, rhs, sizeof(double) * n);
  fftw_execute(plans_->plan);
  const double norm = 1.0 / (4.0 * (nx_ + 1.0) * (ny_ + 1.0));
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const double d = lam_x_[i] + lam_y_[j] + shift;
      b[static_cast<std::size_t>(j) * nx_ + i] *= norm / d;
    }
  }
  fftw_execute(plans_->plan);
  std::memcpy(out, b, sizeof(double) * n);
}

}  // namespace curvlayer
