#include "curvlayer/birman_schwinger.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "curvlayer/krylov.hpp"
#include "curvlayer/specfun.hpp"

namespace curvlayer {
namespace {

constexpr std::size_t kDenseLimit = 4096;

std::vector<double> trapezoid_sqrt_weights(const Grid2D& g) {
  std::vector<double> w(g.size());
  for (int j = 0; j < g.ny; ++j) {
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 * g.hy : g.hy;
    for (int i = 0; i < g.nx; ++i) {
      const double wx = (i == 0 || i == g.nx - 1) ? 0.5 * g.hx : g.hx;
      w[g.index(i, j)] = std::sqrt(wx * wy);
    }
  }
  return w;
}

std::vector<double> scaled(const KernelTable& t, double factor, double shift = 0.0) {
  std::vector<double> v(t.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = factor * t.values[i] + shift;
  return v;
}

}  // namespace

BSOperator::BSOperator(const ModeProjectedPotential& proj)
    : basis_(proj.basis()), grid_(proj.grid()), modes_(proj.modes()), n_(proj.grid().size()) {
  if (std::abs(grid_.hx - grid_.hy) > 1e-12 * grid_.hx) throw std::invalid_argument("BSOperator: square cells required");
  x_.resize(n_);
  y_.resize(n_);
  sqrt_w_ = trapezoid_sqrt_weights(grid_);
  bool any_neg = false, any_pos = false;
  Eigen::MatrixXd v(modes_, modes_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (std::size_t p = 0; p < n_; ++p) {
    for (int j = 1; j <= modes_; ++j)
      for (int jp = 1; jp <= modes_; ++jp) v(j - 1, jp - 1) = proj.V(j, jp)[p];
    es.compute(v);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXd& U = es.eigenvectors();
    Eigen::VectorXd a(modes_), b(modes_);
    for (int i = 0; i < modes_; ++i) {
      const double r = std::sqrt(std::abs(ev[i]));
      a[i] = r;
      b[i] = ev[i] < 0.0 ? -r : r;
      if (ev[i] < 0.0) any_neg = true;
      if (ev[i] > 0.0) any_pos = true;
    }
    x_[p] = U * a.asDiagonal() * U.transpose();
    y_[p] = U * b.asDiagonal() * U.transpose();
  }
  sign_ = any_neg ? (any_pos ? SignClass::Indefinite : SignClass::NonPositive)
                  : (any_pos ? SignClass::NonNegative : SignClass::Zero);
  const Eigen::Index dim = dimension();
  psi_x_.resize(dim);
  psi_y_.resize(dim);
  for (std::size_t p = 0; p < n_; ++p) {
    for (int j = 0; j < modes_; ++j) {
      psi_x_[j * n_ + p] = sqrt_w_[p] * x_[p](j, 0);
      psi_y_[j * n_ + p] = sqrt_w_[p] * y_[p](j, 0);
    }
  }
  conv_ = std::make_unique<LinearConvolver>(grid_.nx, grid_.ny);
  scratch_in_.resize(dim);
  scratch_out_.resize(dim);
}

BSOperator::~BSOperator() = default;

void BSOperator::set_w(double w) {
  if (!(w < 0.0)) throw std::domain_error("BSOperator::set_w: w must be negative");
  set_s(std::exp(2.0 / w));
}

void BSOperator::set_s(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("BSOperator::set_s: s must be positive");
  if (s == s_) return;
  s_ = s;
  const double k1 = std::sqrt(s);
  const double inv2pi = 1.0 / (2.0 * kPi);
  regular_.clear();
  const KernelTable a = shifted_resolvent_table(grid_, k1);
  regular_.push_back(conv_->transform_kernel(scaled(a, inv2pi)));
  full_first_ = conv_->transform_kernel(scaled(a, inv2pi, -std::log(k1) * inv2pi));
  for (int j = 2; j <= modes_; ++j) {
    const double kj = std::sqrt(basis_.k_sq(j) + s);
    regular_.push_back(conv_->transform_kernel(scaled(bessel_k0_table(grid_, kj, DiagonalRule::Auto), inv2pi)));
  }
}

void BSOperator::sandwich(const Eigen::VectorXd& in, Eigen::VectorXd& out, bool full, Left left, bool right_x) const {
  if (s_ <= 0.0) throw std::logic_error("BSOperator: kernels not initialised (call set_w or set_s)");
  const Eigen::Index dim = dimension();
  if (in.size() != dim) throw std::invalid_argument("BSOperator: vector size mismatch");
  out.resize(dim);
  Eigen::VectorXd vp(modes_), tp(modes_);
  for (std::size_t p = 0; p < n_; ++p) {
    for (int j = 0; j < modes_; ++j) vp[j] = in[j * n_ + p];
    tp.noalias() = (right_x ? x_[p] : y_[p]) * vp;
    for (int j = 0; j < modes_; ++j) scratch_in_[j * n_ + p] = sqrt_w_[p] * tp[j];
  }
  for (int j = 0; j < modes_; ++j) {
    const KernelSpectrum& ker = (j == 0 && full) ? full_first_ : regular_[j];
    conv_->apply(ker, scratch_in_.data() + j * n_, scratch_out_.data() + j * n_);
  }
  for (std::size_t p = 0; p < n_; ++p) {
    for (int j = 0; j < modes_; ++j) vp[j] = scratch_out_[j * n_ + p];
    tp.noalias() = (left == Left::X ? x_[p] : y_[p]) * vp;
    for (int j = 0; j < modes_; ++j) out[j * n_ + p] = sqrt_w_[p] * tp[j];
  }
}

void BSOperator::apply_M(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  sandwich(in, out, false, Left::X, false);
}

void BSOperator::apply_K(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  sandwich(in, out, true, Left::X, false);
}

void BSOperator::apply_MT(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  sandwich(in, out, false, Left::Y, true);
}

void BSOperator::apply_XGX(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  sandwich(in, out, true, Left::X, true);
}

namespace {

// Dense G blocks sandwiched by pointwise factors, for one kernel per mode.
Eigen::MatrixXd dense_sandwich(const BSOperator& op, const std::vector<const KernelTable*>& tables,
                               const std::vector<double>& factor, const std::vector<double>& shift) {
  const Grid2D& g = op.grid();
  const std::size_t n = g.size();
  const int N = op.modes();
  const Eigen::Index dim = op.dimension();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  const auto& sw = op.sqrt_weights();
  for (std::size_t p = 0; p < n; ++p) {
    const int ip = static_cast<int>(p % g.nx), jp = static_cast<int>(p / g.nx);
    for (std::size_t q = 0; q < n; ++q) {
      const int iq = static_cast<int>(q % g.nx), jq = static_cast<int>(q / g.nx);
      Eigen::VectorXd gdiag = Eigen::VectorXd::Zero(N);
      bool any = false;
      for (int m = 0; m < N; ++m) {
        if (!tables[m]) continue;
        gdiag[m] = factor[m] * tables[m]->at(ip - iq, jp - jq) + shift[m];
        any = true;
      }
      if (!any) continue;
      const Eigen::MatrixXd blk = sw[p] * sw[q] * (op.X(p) * gdiag.asDiagonal() * op.Y(q));
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) out(a * n + p, b * n + q) = blk(a, b);
    }
  }
  return out;
}

void check_dense(const ModeProjectedPotential& proj) {
  if (proj.grid().size() * static_cast<std::size_t>(proj.modes()) > kDenseLimit)
    throw std::invalid_argument("dense Birman-Schwinger assembly limited to 4096 unknowns");
}

}  // namespace

BSKernelSet assemble_M(double w, double lambda, const ModeProjectedPotential& proj) {
  check_dense(proj);
  if (!(w < 0.0)) throw std::domain_error("assemble_M: w must be negative");
  BSOperator op(proj);
  const int N = proj.modes();
  const double s = std::exp(2.0 / w);
  const double k1 = std::sqrt(s);
  const double inv2pi = 1.0 / (2.0 * kPi);
  BSKernelSet set;
  set.w = w;
  set.lambda = lambda;
  set.k1 = k1;
  set.psi_x = op.psi_x();
  set.psi_y = op.psi_y();
  set.L = (-std::log(k1) * inv2pi) * (op.psi_x() * op.psi_y().transpose());
  const KernelTable a = shifted_resolvent_table(proj.grid(), k1);
  std::vector<const KernelTable*> t(N, nullptr);
  std::vector<double> f(N, inv2pi), z(N, 0.0);
  t[0] = &a;
  set.A = dense_sandwich(op, t, f, z);
  std::vector<KernelTable> bt;
  bt.reserve(N);
  for (int j = 2; j <= N; ++j) bt.push_back(bessel_k0_table(proj.grid(), std::sqrt(proj.basis().k_sq(j) + s), DiagonalRule::Auto));
  std::vector<const KernelTable*> tb(N, nullptr);
  for (int j = 2; j <= N; ++j) tb[j - 1] = &bt[j - 2];
  set.B = dense_sandwich(op, tb, f, z);
  return set;
}

Eigen::MatrixXd assemble_direct(double w, const ModeProjectedPotential& proj) {
  check_dense(proj);
  if (!(w < 0.0)) throw std::domain_error("assemble_direct: w must be negative");
  BSOperator op(proj);
  const int N = proj.modes();
  const double s = std::exp(2.0 / w);
  std::vector<KernelTable> tables;
  tables.reserve(N);
  tables.push_back(bessel_k0_table(proj.grid(), std::sqrt(s), DiagonalRule::LogCorrected));
  for (int j = 2; j <= N; ++j)
    tables.push_back(bessel_k0_table(proj.grid(), std::sqrt(proj.basis().k_sq(j) + s), DiagonalRule::Auto));
  std::vector<const KernelTable*> t(N);
  for (int j = 0; j < N; ++j) t[j] = &tables[j];
  return dense_sandwich(op, t, std::vector<double>(N, 1.0 / (2.0 * kPi)), std::vector<double>(N, 0.0));
}

double bs_F(BSOperator& op, double lambda, double w, const BSOptions& opt, Eigen::VectorXd* warm) {
  op.set_w(w);
  const LinearMap A = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    op.apply_M(in, out);
    out = in + lambda * out;
  };
  Eigen::VectorXd phi = (warm && warm->size() == op.dimension()) ? *warm : op.psi_x();
  const SolveReport rep = gmres(A, op.psi_x(), phi, opt.linear_tol);
  if (!rep.converged && rep.relative_residual > 1e3 * opt.linear_tol)
    throw std::runtime_error("bs_F: GMRES did not converge (I + lambda M may be ill-conditioned)");
  if (warm) *warm = phi;
  return lambda / (2.0 * kPi) * op.psi_y().dot(phi);
}

namespace {

// (1 + nu) / (1 - nu) with nu = ||lambda M||_2 from power iteration on M^T M;
// infinite when nu >= 1 (no bound available).
double condition_estimate(const BSOperator& op, double lambda) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(op.dimension()).normalized(), mv, mtmv;
  double sigma_sq = 0.0;
  for (int it = 0; it < 30; ++it) {
    op.apply_M(v, mv);
    op.apply_MT(mv, mtmv);
    const double nrm = mtmv.norm();
    if (nrm == 0.0) break;
    if (std::abs(nrm - sigma_sq) <= 1e-6 * nrm) {
      sigma_sq = nrm;
      break;
    }
    sigma_sq = nrm;
    v = mtmv / nrm;
  }
  const double nu = lambda * std::sqrt(sigma_sq);
  if (!(nu < 1.0)) return std::numeric_limits<double>::infinity();
  return (1.0 + nu) / (1.0 - nu);
}

}  // namespace

BSResult solve_implicit(double lambda, const ModeProjectedPotential& proj, const BSOptions& opt, double w_start) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_implicit: lambda must be positive");
  BSOperator op(proj);
  BSResult res;
  res.method = "fixed_point";
  const double c = lambda / (2.0 * kPi);
  double w = w_start;
  if (!(w < 0.0)) {
    const ExpansionTerms ex = expansion_w(lambda, proj);
    if (ex.verdict == ExistenceVerdict::NoBoundState) throw NoBoundState(ex.message);
    // Zero-mean potentials start from the two-term expansion.
    w = ex.zero_mean ? ex.w : c * op.psi_y().dot(op.psi_x());
    if (!(w < 0.0)) throw NoBoundState("starting value is non-negative");
  }
  Eigen::VectorXd warm;
  double prev_step = 0.0;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const double f = bs_F(op, lambda, w, opt, &warm);
    BSIteration row;
    row.iteration = it;
    row.w = w;
    row.F = f;
    row.residual = std::abs(f - w);
    row.contraction = prev_step > 0.0 ? row.residual / prev_step : 0.0;
    res.history.push_back(row);
    prev_step = row.residual;
    res.iterations = it;
    if (!(f < 0.0)) throw NoBoundState("fixed-point iterate left (-inf, 0): no weakly coupled bound state");
    w = f;
    if (row.residual <= opt.tol * std::abs(f)) break;
  }
  res.w_star = w;
  res.residual = std::abs(bs_F(op, lambda, w, opt, &warm) - w);
  const double dw = 1e-4 * std::abs(w);
  Eigen::VectorXd wp = warm, wm = warm;
  const double fp = bs_F(op, lambda, w + dw, opt, &wp);
  const double fm = bs_F(op, lambda, w - dw, opt, &wm);
  res.contraction = std::abs(fp - fm) / (2.0 * dw);
  res.unique = res.contraction < 1.0;
  op.set_w(w);
  res.condition_estimate = condition_estimate(op, lambda);
  if (res.residual > std::max(1e3 * opt.tol * std::abs(w), 1e-300))
    throw std::runtime_error("solve_implicit: fixed-point iteration did not converge");
  res.log_gap = 2.0 / w;
  const double kappa1_sq = proj.basis().kappa_sq(1);
  res.E = kappa1_sq - std::exp(res.log_gap);
  res.alpha_star = std::sqrt(std::max(0.0, res.E));
  return res;
}

double bs_mu(BSOperator& op, double s, const BSOptions& opt, Eigen::VectorXd* warm) {
  op.set_s(s);
  const Eigen::VectorXd start = (warm && warm->size() == op.dimension()) ? *warm : Eigen::VectorXd();
  EigenPair ep;
  double mu = 0.0;
  switch (op.sign_class()) {
    case SignClass::Zero:
      return 0.0;
    case SignClass::NonPositive: {
      const LinearMap A = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { op.apply_XGX(in, out); };
      ep = lanczos_extreme(A, op.dimension(), Extreme::Largest, start, opt.eigen_tol, opt.krylov_dim);
      mu = -ep.value;
      break;
    }
    case SignClass::NonNegative: {
      const LinearMap A = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { op.apply_XGX(in, out); };
      ep = lanczos_extreme(A, op.dimension(), Extreme::Smallest, start, opt.eigen_tol, opt.krylov_dim);
      mu = ep.value;
      break;
    }
    case SignClass::Indefinite: {
      const LinearMap A = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { op.apply_K(in, out); };
      ep = arnoldi_smallest_real(A, op.dimension(), start, opt.eigen_tol, opt.krylov_dim);
      mu = ep.value;
      break;
    }
  }
  if (!ep.converged) throw std::runtime_error("bs_mu: eigensolver did not converge");
  if (warm) *warm = ep.vector;
  return mu;
}

BSResult bs_eigen_rootfind(double lambda, const ModeProjectedPotential& proj, const BSOptions& opt) {
  if (!(lambda > 0.0)) throw std::invalid_argument("bs_eigen_rootfind: lambda must be positive");
  BSOperator op(proj);
  BSResult res;
  res.method = "eigen_rootfind";
  const double kappa1_sq = proj.basis().kappa_sq(1);
  Eigen::VectorXd warm;
  int evals = 0;
  auto g = [&](double t) {
    ++evals;
    const double mu = bs_mu(op, std::exp(t), opt, &warm);
    BSIteration row;
    row.iteration = evals;
    row.w = 2.0 / t;
    row.F = mu;
    row.residual = lambda * mu + 1.0;
    res.history.push_back(row);
    return lambda * mu + 1.0;
  };
  const double t_lo = opt.min_log_gap;
  const double t_hi = std::log(kappa1_sq);
  if (!(t_hi > t_lo)) throw NoResolvableRoot("bs_eigen_rootfind: empty search interval");
  const double g_hi = g(t_hi);
  if (g_hi <= 0.0)
    throw NoResolvableRoot("lambda mu + 1 <= 0 at alpha = 0: the eigenvalue lies below the weak-coupling range");
  const double g_lo = g(t_lo);
  if (g_lo >= 0.0) throw NoResolvableRoot("no sign change of lambda mu + 1 for log-gaps above the resolvable range");
  auto tol = [&](double a, double b) { return std::abs(b - a) <= opt.tol * std::max(1.0, std::abs(a)); };
  std::uintmax_t max_iter = static_cast<std::uintmax_t>(opt.max_iterations);
  const auto r = boost::math::tools::toms748_solve(g, t_lo, t_hi, g_lo, g_hi, tol, max_iter);
  const double t = 0.5 * (r.first + r.second);
  res.iterations = evals;
  res.log_gap = t;
  res.w_star = 2.0 / t;
  res.residual = std::abs(g(t));
  res.E = kappa1_sq - std::exp(t);
  res.alpha_star = std::sqrt(std::max(0.0, res.E));
  res.unique = true;
  return res;
}

}  // namespace curvlayer
