#include "curvlayer/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "curvlayer/asymptotics.hpp"
#include "curvlayer/birman_schwinger.hpp"
#include "curvlayer/csv.hpp"
#include "curvlayer/direct_solver.hpp"
#include "curvlayer/geometry.hpp"
#include "curvlayer/planar_schrodinger.hpp"
#include "curvlayer/specfun.hpp"
#include "curvlayer/transverse.hpp"

namespace curvlayer {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = file("resolved_config.ini");
    std::ofstream(path) << to_ini(cfg);
    report.files.push_back(path);
  }
  std::string file(const std::string& name) const { return (std::filesystem::path(cfg_.out_dir) / name).string(); }
  CsvWriter csv(const std::string& name, const std::vector<std::string>& columns) {
    report.files.push_back(file(name));
    return CsvWriter(file(name), columns);
  }
  void say(const std::string& s) { report.lines.push_back(s); }
  void fail(int code, const std::string& s) {
    say(s);
    if (report.exit_code == kExitOk || code == kExitValidation) report.exit_code = code;
  }
  PipelineReport report;

 private:
  const RunConfig& cfg_;
};

std::string num(double v) { return format_double(v); }

void require_surface(const RunConfig& cfg) {
  if (cfg.surface.empty()) throw ConfigError("this subcommand needs a [surface] section");
}

void require_potential(const RunConfig& cfg) {
  if (cfg.potential.empty()) throw ConfigError("this subcommand needs a [potential] section");
}

SurfaceJet layer_jet(const RunConfig& cfg) {
  const auto surface = make_surface(cfg.surface, cfg.surface_params);
  return build_surface_jet(*surface, Grid2D::centered(cfg.half_extent, cfg.h));
}

// ---- layer ----

void geometry_stage(const RunConfig& cfg, const SurfaceJet& jet, Session& s) {
  const CurvatureBundle bundle = curvatures(jet, cfg.eps);
  const GaussCurvatureTotals tot = total_gauss_curvature(bundle);
  const MeanCurvatureFields lead = leading_order_fields(jet);
  Field2D m0sq(lead.m0.grid()), grad(lead.m0.grid());
  for (std::size_t p = 0; p < m0sq.size(); ++p) m0sq[p] = lead.m0[p] * lead.m0[p];
  auto w = s.csv("geometry_diagnostics.csv",
                 {"eps", "integral_k0", "total_gauss_curvature", "gauss_trusted", "boundary_diagnostic", "max_abs_m0",
                  "m0_norm_sq", "grad_m0_norm_sq", "diffeomorphic", "eta_inf", "rho_m_inv", "c_minus", "c_plus",
                  "C_minus", "C_plus", "sigma_minus", "sigma_plus"});
  LayerConstants lc;
  bool diffeo = true;
  std::string why;
  try {
    lc = layer_constants(bundle, cfg.a);
  } catch (const std::domain_error& e) {
    diffeo = false;
    why = e.what();
    lc = LayerConstants{};
    for (double* x : {&lc.c_minus, &lc.c_plus, &lc.C_minus, &lc.C_plus, &lc.sigma_minus, &lc.sigma_plus}) *x = kNaN;
  }
  w.row({cfg.eps, tot.integral_k0, tot.total, static_cast<long long>(tot.trusted), bundle.boundary_diagnostic,
         lead.m0.max_abs(), integrate(m0sq), integrate(lead.grad_m0_sq), static_cast<long long>(diffeo), lc.eta_inf,
         lc.rho_m_inv, lc.c_minus, lc.c_plus, lc.C_minus, lc.C_plus, lc.sigma_minus, lc.sigma_plus});
  s.say("integral of k0 = " + num(tot.integral_k0) + ", total Gauss curvature = " + num(tot.total));
  if (!tot.trusted) s.say("warning: " + tot.warning);
  if (!diffeo) s.fail(kExitValidation, "layer map is not a diffeomorphism at eps = " + num(cfg.eps) + ": " + why);
}

void write_fields(const CurvatureBundle& b, Session& s) {
  auto w = s.csv("curvature_fields.csv", {"x1", "x2", "k0", "m0", "K", "M", "kappa1", "kappa2"});
  const Grid2D& g = b.k0.grid();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t p = g.index(i, j);
      w.row({g.x(i), g.y(j), b.k0[p], b.m0[p], b.K[p], b.M[p], b.kappa1[p], b.kappa2[p]});
    }
}

// Returns w1 (tail corrected, Fourier route) or NaN when no bound state is predicted.
double asymptotics_stage(const RunConfig& cfg, const SurfaceJet& jet, Session& s) {
  const MeanCurvatureFields lead = leading_order_fields(jet);
  if (!(lead.m0.max_abs() > 0.0)) {
    s.fail(kExitNoBoundState, "no bound state predicted: the mean curvature vanishes identically (w1 = 0)");
    return kNaN;
  }
  const TransverseBasis basis(cfg.a, cfg.asymptotic_modes);
  AsymptoticOptions opt;
  opt.pad_factor = cfg.pad_factor;
  const SpectralResult fr = w1_fourier(lead.m0, basis, opt);
  const SpectralResult rs = w1_realspace(lead.m0, basis, opt);
  const IntermediateResult im = w1_intermediate(lead, basis);
  const double wf = fr.w_tail_corrected, wr = rs.w_tail_corrected, wi = im.w;
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
  {
    auto w = s.csv("w1_routes.csv", {"route", "w1", "tail_estimate", "w1_tail_corrected", "relative_to_fourier"});
    w.row({std::string("fourier"), fr.w, fr.tail_estimate, wf, 0.0});
    w.row({std::string("realspace"), rs.w, rs.tail_estimate, wr, rel(wr, wf)});
    w.row({std::string("intermediate"), im.w, 0.0, wi, rel(wi, wf)});
  }
  const double worst = std::max({rel(wr, wf), rel(wi, wf), rel(wi, wr)});
  s.say("w1: fourier " + num(wf) + ", realspace " + num(wr) + ", intermediate " + num(wi) +
        " (max relative difference " + num(worst) + ")");
  if (!(worst < cfg.route_tol)) s.fail(kExitValidation, "w1 routes disagree beyond route_tol = " + num(cfg.route_tol));
  if (!(wf < 0.0)) {
    s.fail(kExitNoBoundState, "w1 is not negative: no bound state predicted");
    return kNaN;
  }

  {
    auto w = s.csv("thin_layer.csv", {"d", "w1", "thin_leading", "thin_two_term", "difference"});
    for (double d : {cfg.a, 0.5 * cfg.a, 0.25 * cfg.a}) {
      const TransverseBasis bd(d, cfg.asymptotic_modes);
      const double wd = w1_fourier(lead.m0, bd, opt).w_tail_corrected;
      const ThinLayerResult t = w1_thin(lead.m0, d, nullptr, cfg.pad_factor);
      const double two = t.leading + t.d2_term;
      w.row({d, wd, t.leading, two, wd - two});
    }
  }
  {
    auto w = s.csv("energy_sweep.csv", {"eps", "w1_eps2", "log_gap", "E"});
    const double kappa1 = basis.kappa(1);
    for (double e : cfg.eps_sweep) {
      const EnergyMap em = energy_from_w(e * e * wf, kappa1);
      w.row({e, e * e * wf, em.log_gap, em.E});
    }
  }
  return wf;
}

void bracket_stage(const RunConfig& cfg, const SurfaceJet& jet, double w1, Session& s) {
  const double eps = std::sqrt(2.0 / (cfg.bracket_log_gap * w1));
  BracketParams prm;
  prm.modes = cfg.modes;
  prm.direct.memory_budget_gb = cfg.memory_budget_gb;
  prm.bs.tol = std::max(cfg.tol, 1e-13);
  const BracketResult r = bracket_layer_energy(jet, cfg.a, eps, prm);
  auto w = s.csv("bracket.csv", {"eps", "predicted_w", "predicted_log_gap", "resolved", "E_minus", "E_plus", "w_minus",
                                 "w_plus", "ordered", "method_minus", "method_plus", "verdict"});
  w.row({eps, r.predicted_w, r.predicted_log_gap, static_cast<long long>(r.resolved), r.resolved ? r.E_minus : kNaN,
         r.resolved ? r.E_plus : kNaN, r.resolved ? r.w_minus : kNaN, r.resolved ? r.w_plus : kNaN,
         static_cast<long long>(r.ordered), r.method_minus, r.method_plus, r.verdict});
  s.say("bracket at eps = " + num(eps) + ": " + r.verdict);
  if (r.resolved && !r.ordered) s.fail(kExitValidation, "bracket order E_minus <= E_plus violated");
}

// ---- planar ----

struct PlanarSetup {
  TransverseBasis basis;
  ModeProjectedPotential proj;
};

PlanarSetup planar_setup(const RunConfig& cfg) {
  const PotentialSpec V = make_potential(cfg.potential, cfg.potential_params);
  TransverseBasis basis(cfg.a, cfg.modes);
  const Grid2D grid = Grid2D::centered(cfg.half_extent, cfg.h);
  ModeProjectedPotential proj = project_potential(V, basis, grid, std::max(2 * cfg.modes, 16));
  return {basis, std::move(proj)};
}

BSOptions bs_options(const RunConfig& cfg) {
  BSOptions o;
  o.tol = cfg.tol;
  return o;
}

double energy_or_nan(double w, double kappa1) {
  if (!(w < 0.0)) return kNaN;
  return energy_from_w(w, kappa1).E;
}

std::vector<LadderRow> direct_ladder(const RunConfig& cfg, double lambda, Session& s, CsvWriter& ladder) {
  const PotentialSpec V = make_potential(cfg.potential, cfg.potential_params);
  std::vector<LadderPoint> pts;
  for (double h : cfg.direct_h) pts.push_back({cfg.direct_half_extent, h, cfg.modes});
  DirectOptions opt;
  opt.memory_budget_gb = cfg.memory_budget_gb;
  std::vector<LadderRow> rows;
  try {
    rows = refinement_ladder(V, cfg.a, lambda, pts, opt);
  } catch (const ResourceLimitExceeded& e) {
    s.say(std::string("direct solver skipped: ") + e.what());
    return {};
  }
  for (const LadderRow& r : rows)
    ladder.row({lambda, r.L, r.h, static_cast<long long>(r.N), r.E, r.residual, r.runtime_s});
  return rows;
}

double extrapolated(const std::vector<LadderRow>& rows) {
  if (rows.empty()) return kNaN;
  if (rows.size() >= 2) {
    const LadderRow& a = rows[rows.size() - 2];
    const LadderRow& b = rows.back();
    if (std::abs(a.h - 2.0 * b.h) <= 1e-12 * a.h) return richardson(a.E, b.E);
  }
  return rows.back().E;
}

double log_slope(double x1, double y1, double x2, double y2) { return std::log(y1 / y2) / std::log(x1 / x2); }

}  // namespace

PipelineReport run_geometry(const RunConfig& cfg) {
  require_surface(cfg);
  Session s(cfg);
  const SurfaceJet jet = layer_jet(cfg);
  geometry_stage(cfg, jet, s);
  write_fields(curvatures(jet, cfg.eps), s);
  return s.report;
}

PipelineReport run_asymptotics(const RunConfig& cfg) {
  require_surface(cfg);
  Session s(cfg);
  asymptotics_stage(cfg, layer_jet(cfg), s);
  return s.report;
}

PipelineReport run_layer_pipeline(const RunConfig& cfg) {
  require_surface(cfg);
  Session s(cfg);
  const SurfaceJet jet = layer_jet(cfg);
  geometry_stage(cfg, jet, s);
  const double w1 = asymptotics_stage(cfg, jet, s);
  if (cfg.bracket && w1 < 0.0) bracket_stage(cfg, jet, w1, s);
  return s.report;
}

PipelineReport run_planar(const RunConfig& cfg) {
  require_potential(cfg);
  Session s(cfg);
  const PlanarSetup st = planar_setup(cfg);
  auto w = s.csv("expansion.csv", {"lambda", "integral_v11", "first", "log_term", "mode_sum", "modes_used", "second",
                                   "w", "verdict", "E"});
  bool any = false;
  for (double lam : cfg.lambda_sweep) {
    const ExpansionTerms t = expansion_w(lam, st.proj);
    double mode_sum = 0.0;
    for (double m : t.mode_terms) mode_sum += m;
    const bool bound = t.verdict == ExistenceVerdict::BoundState && t.w < 0.0;
    any = any || bound;
    w.row({lam, t.integral_v11, t.first, t.log_term, mode_sum, static_cast<long long>(t.modes_used), t.second, t.w,
           to_string(t.verdict), bound ? energy_or_nan(t.w, st.basis.kappa(1)) : kNaN});
    if (!t.message.empty()) s.say("lambda = " + num(lam) + ": " + t.message);
  }
  if (!any) s.fail(kExitNoBoundState, "no bound state predicted for any lambda");
  return s.report;
}

PipelineReport run_bs(const RunConfig& cfg) {
  require_potential(cfg);
  Session s(cfg);
  const PlanarSetup st = planar_setup(cfg);
  const double kappa1_sq = st.basis.kappa_sq(1);
  auto res = s.csv("bs_result.csv", {"method", "lambda", "w_star", "alpha_star", "E", "log_gap", "iterations",
                                     "residual", "contraction", "unique"});
  BSResult fp;
  try {
    fp = solve_implicit(cfg.lambda, st.proj, bs_options(cfg));
  } catch (const NoBoundState& e) {
    s.fail(kExitNoBoundState, std::string("no bound state detected: ") + e.what());
    return s.report;
  }
  {
    auto it = s.csv("bs_iterations.csv", {"iteration", "w", "F", "residual", "contraction"});
    for (const BSIteration& r : fp.history)
      it.row({static_cast<long long>(r.iteration), r.w, r.F, r.residual, r.contraction});
  }
  res.row({fp.method, cfg.lambda, fp.w_star, fp.alpha_star, fp.E, fp.log_gap, static_cast<long long>(fp.iterations),
           fp.residual, fp.contraction, static_cast<long long>(fp.unique)});
  s.say("fixed point: w* = " + num(fp.w_star) + ", E = " + num(fp.E) + ", contraction = " + num(fp.contraction));
  if (!fp.unique) s.fail(kExitValidation, "fixed-point map is not a contraction at the solution");
  if (cfg.bs_rootfind) {
    try {
      const BSResult rf = bs_eigen_rootfind(cfg.lambda, st.proj, bs_options(cfg));
      res.row({rf.method, cfg.lambda, rf.w_star, rf.alpha_star, rf.E, rf.log_gap, static_cast<long long>(rf.iterations),
               rf.residual, kNaN, static_cast<long long>(rf.unique)});
      s.say("root finder: w* = " + num(rf.w_star) + ", E = " + num(rf.E));
      if (std::abs(rf.alpha_star - fp.alpha_star) > 1e-6)
        s.fail(kExitValidation, "root finder and fixed point disagree in alpha beyond 1e-6");
    } catch (const NoResolvableRoot& e) {
      s.say(std::string("root finder: ") + e.what());
    }
  }
  (void)kappa1_sq;
  return s.report;
}

PipelineReport run_direct(const RunConfig& cfg) {
  require_potential(cfg);
  Session s(cfg);
  auto ladder = s.csv("direct_ladder.csv", {"lambda", "L", "h", "N", "E", "residual", "runtime_s"});
  const std::vector<LadderRow> rows = direct_ladder(cfg, cfg.lambda, s, ladder);
  if (rows.empty()) {
    s.fail(kExitValidation, "direct solver could not run within the memory budget");
    return s.report;
  }
  const double E = extrapolated(rows);
  const double threshold = TransverseBasis(cfg.a, 1).kappa_sq(1);
  s.say("direct: E = " + num(E) + " (threshold " + num(threshold) + ")");
  if (!(E < threshold)) s.fail(kExitNoBoundState, "no resolvable bound state below the threshold");
  return s.report;
}

PipelineReport run_planar_pipeline(const RunConfig& cfg) {
  require_potential(cfg);
  Session s(cfg);
  const PlanarSetup st = planar_setup(cfg);
  const double kappa1 = st.basis.kappa(1);
  auto table = s.csv("planar_sweep.csv", {"lambda", "verdict", "w_expansion", "w_bs", "w_rootfind", "E_expansion",
                                          "E_bs", "E_rootfind", "E_direct", "bs_iterations", "bs_contraction"});
  auto iters = s.csv("bs_iterations.csv", {"lambda", "iteration", "w", "F", "residual", "contraction"});
  auto ladder = s.csv("direct_ladder.csv", {"lambda", "L", "h", "N", "E", "residual", "runtime_s"});
  std::vector<double> lam_ok, diff_ok;
  bool any = false;
  for (double lam : cfg.lambda_sweep) {
    const ExpansionTerms ex = expansion_w(lam, st.proj);
    const bool predicted = ex.verdict == ExistenceVerdict::BoundState && ex.w < 0.0;
    double w_bs = kNaN, w_rf = kNaN, E_dir = kNaN;
    long long its = 0;
    double q = kNaN;
    bool bs_found = false;
    try {
      const BSResult fp = solve_implicit(lam, st.proj, bs_options(cfg));
      w_bs = fp.w_star;
      its = fp.iterations;
      q = fp.contraction;
      bs_found = true;
      for (const BSIteration& r : fp.history) iters.row({lam, static_cast<long long>(r.iteration), r.w, r.F, r.residual, r.contraction});
    } catch (const NoBoundState&) {
    }
    if (bs_found && cfg.bs_rootfind) {
      try {
        w_rf = bs_eigen_rootfind(lam, st.proj, bs_options(cfg)).w_star;
      } catch (const NoResolvableRoot&) {
      }
    }
    if (bs_found && cfg.direct && 2.0 / w_bs > cfg.direct_min_log_gap) E_dir = extrapolated(direct_ladder(cfg, lam, s, ladder));
    const bool bound = predicted || bs_found;
    any = any || bound;
    table.row({lam, std::string(bound ? "bound" : "none"), predicted ? ex.w : kNaN, w_bs, w_rf,
               predicted ? energy_or_nan(ex.w, kappa1) : kNaN, energy_or_nan(w_bs, kappa1), energy_or_nan(w_rf, kappa1),
               E_dir, its, q});
    if (predicted && bs_found) {
      lam_ok.push_back(lam);
      diff_ok.push_back(std::abs(w_bs - ex.w));
    }
  }
  {
    auto orders = s.csv("orders.csv", {"lambda_a", "lambda_b", "slope_abs_w_bs_minus_w_expansion"});
    for (std::size_t i = 1; i < lam_ok.size(); ++i) {
      const double slope = (diff_ok[i] > 0.0 && diff_ok[i - 1] > 0.0)
                               ? log_slope(lam_ok[i - 1], diff_ok[i - 1], lam_ok[i], diff_ok[i])
                               : kNaN;
      orders.row({lam_ok[i - 1], lam_ok[i], slope});
      s.say("order slope over lambda in [" + num(lam_ok[i]) + ", " + num(lam_ok[i - 1]) + "]: " + num(slope));
    }
  }
  if (!any) s.fail(kExitNoBoundState, "no bound state for any lambda (verdict none)");
  return s.report;
}

PipelineReport run_selftest(const RunConfig& cfg) {
  Session s(cfg);
  auto w = s.csv("selftest.csv", {"check", "value", "tolerance", "pass"});
  bool ok = true;
  auto check = [&](const std::string& name, double value, double tol) {
    const bool pass = std::abs(value) <= tol;
    ok = ok && pass;
    w.row({name, value, tol, static_cast<long long>(pass)});
    s.say(std::string(pass ? "PASS " : "FAIL ") + name + " = " + num(value));
  };
  {
    const TransverseBasis b(kPi / 2.0, 512);
    const OverlapSums o = overlap_sums(b);
    check("overlap_s0_deficit", o.s0 - o.s0_target, 1e-6);
    check("overlap_s2_deficit", o.s2 - o.s2_target, 1e-3);
  }
  {
    double worst = 0.0;
    for (double u : {1e-3, 0.1, 1.0, 5.0, 20.0}) {
      const double k = bessel_k0(u);
      worst = std::max(worst, std::abs(interp_f(u) * std::log(u) + interp_g(u) - k) / k);
    }
    check("k0_decomposition_relative", worst, 1e-12);
  }
  {
    const TransverseBasis b(kPi / 2.0, 3);
    const Grid2D g = Grid2D::centered(3.0, 0.5);
    const PotentialSpec V = make_potential("gaussian_well", {{"depth", 1.0}, {"width", 1.0}, {"tilt", 0.2}});
    const ModeProjectedPotential proj = project_potential(V, b, g, 16);
    const BSKernelSet k = assemble_M(-0.5, 0.5, proj);
    const Eigen::MatrixXd D = assemble_direct(-0.5, proj);
    check("bs_splitting_exactness", (k.L + k.A + k.B - D).cwiseAbs().maxCoeff(), 1e-10);
  }
  if (!ok) s.fail(kExitValidation, "selftest failed");
  return s.report;
}

}  // namespace curvlayer
