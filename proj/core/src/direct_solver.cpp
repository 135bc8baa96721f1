#include "curvlayer/direct_solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "curvlayer/asymptotics.hpp"
#include "curvlayer/fft.hpp"
#include "curvlayer/krylov.hpp"
#include "curvlayer/quadrature.hpp"
#include "curvlayer/specfun.hpp"

namespace curvlayer {

double ModeCoupledOperator::laplacian_min() const {
  const double s = std::sin(kPi / (2.0 * (m + 1)));
  return 8.0 * s * s / (h * h);
}

void ModeCoupledOperator::apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  const std::size_t n = nodes();
  if (in.size() != dimension()) throw std::invalid_argument("ModeCoupledOperator::apply: size mismatch");
  out.resize(dimension());
  const double inv_h2 = 1.0 / (h * h);
  for (int j = 0; j < N; ++j) {
    const double* x = in.data() + j * n;
    double* y = out.data() + j * n;
    const double diag = 4.0 * inv_h2 + kappa_sq[j];
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i < m; ++i) {
        const std::size_t p = static_cast<std::size_t>(k) * m + i;
        double nb = 0.0;
        if (i > 0) nb += x[p - 1];
        if (i + 1 < m) nb += x[p + 1];
        if (k > 0) nb += x[p - m];
        if (k + 1 < m) nb += x[p + m];
        y[p] = diag * x[p] - inv_h2 * nb;
      }
    }
  }
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  for (std::size_t p = 0; p < n; ++p) {
    const double* c = coupling.data() + p * NN;
    for (int r = 0; r < N; ++r) {
      double acc = 0.0;
      for (int s = 0; s < N; ++s) acc += c[r + s * N] * in[s * n + p];
      out[r * n + p] += acc;
    }
  }
}

Eigen::SparseMatrix<double> ModeCoupledOperator::sparse() const {
  const std::size_t n = nodes();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(dimension() * (5 + N));
  const double inv_h2 = 1.0 / (h * h);
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  for (int j = 0; j < N; ++j) {
    const Eigen::Index off = static_cast<Eigen::Index>(j) * n;
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i < m; ++i) {
        const Eigen::Index p = static_cast<Eigen::Index>(k) * m + i;
        if (i > 0) t.emplace_back(off + p, off + p - 1, -inv_h2);
        if (i + 1 < m) t.emplace_back(off + p, off + p + 1, -inv_h2);
        if (k > 0) t.emplace_back(off + p, off + p - m, -inv_h2);
        if (k + 1 < m) t.emplace_back(off + p, off + p + m, -inv_h2);
        t.emplace_back(off + p, off + p, 4.0 * inv_h2 + kappa_sq[j]);
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    const double* c = coupling.data() + p * NN;
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s)
        if (c[r + s * N] != 0.0)
          t.emplace_back(static_cast<Eigen::Index>(r * n + p), static_cast<Eigen::Index>(s * n + p), c[r + s * N]);
  }
  Eigen::SparseMatrix<double> A(dimension(), dimension());
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

std::size_t direct_memory_estimate(int m, int N, bool factorize) {
  const double nodes = static_cast<double>(m) * m;
  const double dim = nodes * N;
  double bytes = 8.0 * nodes * N * N + 14.0 * 8.0 * dim;
  if (factorize) bytes += 12.0 * dim * std::min(dim, static_cast<double>(N) * m) + 12.0 * dim * (5.0 + N);
  return static_cast<std::size_t>(bytes);
}

namespace {

void check_memory(std::size_t bytes, double budget_gb) {
  const double gb = static_cast<double>(bytes) / 1e9;
  if (gb > budget_gb) {
    std::ostringstream os;
    os << "direct solver needs about " << gb << " GB, budget is " << budget_gb << " GB";
    throw ResourceLimitExceeded(os.str());
  }
}

}  // namespace

ModeCoupledOperator assemble_direct_operator(const ModeProjectedPotential& proj, double lambda, double L, double h,
                                             int N, double memory_budget_gb) {
  if (!(L > 0.0) || !(h > 0.0)) throw std::invalid_argument("assemble_direct_operator: L and h must be positive");
  const double ratio = 2.0 * L / h;
  const long cells = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(cells)) > 1e-9 * ratio || cells < 4)
    throw std::invalid_argument("assemble_direct_operator: 2L/h must be an integer >= 4");
  if (N < 1 || N > proj.modes()) throw std::invalid_argument("assemble_direct_operator: need 1 <= N <= projected modes");
  const Grid2D box = Grid2D::centered(L, h);
  if (!box.same_as(proj.grid())) throw std::invalid_argument("assemble_direct_operator: projection must live on the closed box grid");
  ModeCoupledOperator op;
  op.L = L;
  op.h = h;
  op.lambda = lambda;
  op.N = N;
  op.m = static_cast<int>(cells) - 1;
  check_memory(direct_memory_estimate(op.m, N, false), memory_budget_gb);
  for (int j = 1; j <= N; ++j) op.kappa_sq.push_back(proj.basis().kappa_sq(j));
  const std::size_t n = op.nodes();
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  op.coupling.assign(n * NN, 0.0);
  op.symmetric = proj.symmetric;
  double cmin = 0.0;
  Eigen::MatrixXd c(N, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (int k = 0; k < op.m; ++k) {
    for (int i = 0; i < op.m; ++i) {
      const std::size_t p = static_cast<std::size_t>(k) * op.m + i;
      const std::size_t q = box.index(i + 1, k + 1);
      for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s) c(r, s) = lambda * proj.V(r + 1, s + 1)[q];
      std::copy(c.data(), c.data() + NN, op.coupling.begin() + static_cast<std::ptrdiff_t>(p * NN));
      es.compute(c, Eigen::EigenvaluesOnly);
      cmin = std::min(cmin, es.eigenvalues()[0]);
    }
  }
  op.coupling_min = cmin;
  return op;
}

namespace {

Eigen::VectorXd start_vector(const ModeCoupledOperator& op) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(op.dimension());
  const double scale = std::max(1.0, 0.25 * op.L);
  for (int k = 0; k < op.m; ++k) {
    const double y = -op.L + (k + 1) * op.h;
    for (int i = 0; i < op.m; ++i) {
      const double x = -op.L + (i + 1) * op.h;
      const double env = std::cos(0.5 * kPi * x / op.L) * std::cos(0.5 * kPi * y / op.L);
      v[static_cast<std::size_t>(k) * op.m + i] = env * std::exp(-(x * x + y * y) / (2.0 * scale * scale));
    }
  }
  return v.normalized();
}

}  // namespace

EigenReport lowest_eigenvalue(const ModeCoupledOperator& op, const DirectOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  EigenReport rep;
  rep.threshold = op.threshold();
  const LinearMap A = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { op.apply(in, out); };
  const Eigen::VectorXd start = start_vector(op);
  Eigen::VectorXd v;
  if (op.dimension() <= opt.factorize_limit) {
    check_memory(direct_memory_estimate(op.m, op.N, true), opt.memory_budget_gb);
    const double sigma = op.threshold() + op.coupling_min - 1.0;
    Eigen::SparseMatrix<double> S = op.sparse();
    Eigen::SparseMatrix<double> I(op.dimension(), op.dimension());
    I.setIdentity();
    S = S - sigma * I;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(S);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("lowest_eigenvalue: factorisation failed");
    const LinearMap inv = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = ldlt.solve(in); };
    const EigenPair ep = lanczos_extreme(inv, op.dimension(), Extreme::Largest, start, 1e-3 * opt.tol, 60, 400);
    if (!ep.converged) throw std::runtime_error("lowest_eigenvalue: shift-invert Lanczos did not converge");
    v = ep.vector.normalized();
    rep.iterations = ep.iterations;
    rep.method = "shift_invert_lanczos";
  } else {
    check_memory(direct_memory_estimate(op.m, op.N, false), opt.memory_budget_gb);
    DirichletPoissonSolver poisson(op.m, op.m, op.h);
    const std::size_t n = op.nodes();
    const Preconditioner T = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out, double shift) {
      out.resize(in.size());
      for (int j = 0; j < op.N; ++j) poisson.solve(in.data() + j * n, out.data() + j * n, op.kappa_sq[j] - shift);
    };
    const double cap = op.threshold() + 0.5 * op.laplacian_min();
    const EigenPair ep = lobpcg_smallest(A, T, start, opt.tol, opt.max_iterations, cap);
    if (!ep.converged) throw std::runtime_error("lowest_eigenvalue: LOBPCG did not converge");
    v = ep.vector.normalized();
    rep.iterations = ep.iterations;
    rep.method = "lobpcg_dst";
  }
  Eigen::VectorXd Av;
  op.apply(v, Av);
  rep.value = v.dot(Av);
  rep.residual = (Av - rep.value * v).norm();
  rep.below_threshold = rep.value < rep.threshold;
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<LadderRow> refinement_ladder(const PotentialSpec& V, double a, double lambda,
                                         const std::vector<LadderPoint>& points, const DirectOptions& opt) {
  std::vector<LadderRow> rows;
  for (const LadderPoint& pt : points) {
    const auto t0 = std::chrono::steady_clock::now();
    const TransverseBasis basis(a, pt.N);
    EigenReport rep;
    {
      const Grid2D grid = Grid2D::centered(pt.L, pt.h);
      ModeCoupledOperator op;
      {
        const ModeProjectedPotential proj = project_potential(V, basis, grid, std::max(2 * pt.N, 16));
        op = assemble_direct_operator(proj, lambda, pt.L, pt.h, pt.N, opt.memory_budget_gb);
      }
      rep = lowest_eigenvalue(op, opt);
    }
    LadderRow row;
    row.L = pt.L;
    row.h = pt.h;
    row.N = pt.N;
    row.E = rep.value;
    row.residual = rep.residual;
    row.below_threshold = rep.below_threshold;
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(row);
  }
  return rows;
}

double richardson(double E_h, double E_half) { return (4.0 * E_half - E_h) / 3.0; }

namespace {

struct SideSolve {
  double E = 0.0;
  std::string method;
};

SideSolve solve_side(const ModeProjectedPotential& proj, double eps, double gap_estimate, const BracketParams& prm) {
  const Grid2D& g = proj.grid();
  const double L = -g.x0;
  const bool centered_square = g.nx == g.ny && std::abs(g.hx - g.hy) <= 1e-12 * g.hx &&
                               std::abs(g.x0 - g.y0) <= 1e-12 * std::max(1.0, L) &&
                               std::abs(g.x0 + 0.5 * (g.nx - 1) * g.hx) <= 1e-9 * std::max(1.0, L);
  if (prm.allow_direct && centered_square && gap_estimate > 0.0 && L >= 8.0 / std::sqrt(gap_estimate)) {
    try {
      const ModeCoupledOperator op = assemble_direct_operator(proj, eps, L, g.hx, proj.modes(), prm.direct.memory_budget_gb);
      const EigenReport rep = lowest_eigenvalue(op, prm.direct);
      if (rep.below_threshold) return {rep.value, rep.method};
    } catch (const ResourceLimitExceeded&) {
      // fall through to the integral-equation route
    }
  }
  const BSResult r = solve_implicit(eps, proj, prm.bs);
  return {proj.basis().kappa_sq(1) - std::exp(r.log_gap), "birman_schwinger_" + r.method};
}

}  // namespace

BracketResult bracket_layer_energy(const SurfaceJet& jet, double a, double eps, const BracketParams& params) {
  if (!(a > 0.0) || !(eps > 0.0)) throw std::invalid_argument("bracket_layer_energy: a and eps must be positive");
  BracketResult out;
  const int N = params.modes;
  const TransverseBasis basis(a, N);
  const double kappa1_sq = basis.kappa_sq(1);

  const MeanCurvatureFields lead = leading_order_fields(jet);
  const SpectralResult w1 = w1_fourier(lead.m0, TransverseBasis(a, std::max(N, 64)));
  out.w1 = w1.w_tail_corrected;
  out.predicted_w = eps * eps * out.w1;
  if (!(out.w1 < 0.0)) {
    out.verdict = "no bound state predicted: the mean curvature vanishes";
    return out;
  }
  out.predicted_log_gap = 2.0 / out.predicted_w;
  if (out.predicted_log_gap < params.min_log_gap) {
    std::ostringstream os;
    os << "asymptotics only: predicted log-gap " << out.predicted_log_gap << " is below " << params.min_log_gap;
    out.verdict = os.str();
    return out;
  }

  const CurvatureBundle bundle = curvatures(jet, eps);
  try {
    out.constants = layer_constants(bundle, a);
  } catch (const std::domain_error& e) {
    out.verdict = std::string("asymptotics only: ") + e.what();
    return out;
  }
  const int nu = params.u_nodes > 0 ? params.u_nodes : 2 * N + 16;
  const QuadratureRule u_rule = gauss_legendre(nu, -a, a);
  const EffectivePotentialField field = effective_potentials(jet, bundle, a, u_rule);
  const double gap_estimate = std::exp(out.predicted_log_gap);

  auto side = [&](const std::vector<double>& values, const char* name) {
    const PotentialSpec spec = PotentialSpec::sampled(jet.grid(), u_rule, values, 2.0, true, name);
    const ModeProjectedPotential proj = project_potential(spec, basis, jet.grid(), nu);
    return solve_side(proj, eps, gap_estimate, params);
  };
  try {
    const SideSolve lo = side(field.V_minus, "V_minus");
    const SideSolve hi = side(field.V_plus, "V_plus");
    out.E_minus = lo.E;
    out.E_plus = hi.E;
    out.method_minus = lo.method;
    out.method_plus = hi.method;
  } catch (const NoBoundState& e) {
    out.verdict = std::string("asymptotics only: a bracket operator has no resolvable bound state (") + e.what() + ")";
    return out;
  }
  out.w_minus = 2.0 / std::log(kappa1_sq - out.E_minus);
  out.w_plus = 2.0 / std::log(kappa1_sq - out.E_plus);
  out.ordered = out.E_minus <= out.E_plus;
  out.resolved = true;
  out.verdict = out.ordered ? "bracketed" : "bracket order violated";
  return out;
}

}  // namespace curvlayer
