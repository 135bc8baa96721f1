#include <benchmark/benchmark.h>

#include <cmath>

#include "curvlayer/birman_schwinger.hpp"
#include "curvlayer/direct_solver.hpp"
#include "curvlayer/kernels.hpp"
#include "curvlayer/specfun.hpp"

using namespace curvlayer;

static void BM_BesselK0(benchmark::State& state) {
  double u = 1e-3, acc = 0.0;
  for (auto _ : state) {
    acc += bessel_k0(u);
    u = u < 40.0 ? u * 1.01 : 1e-3;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_BesselK0);

static void BM_KernelQuadrature(benchmark::State& state) {
  const Grid2D g = Grid2D::centered(8.0, 16.0 / (state.range(0) - 1));
  const Field2D f = sample(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  const KernelTable t = bessel_k0_table(g, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(double_integral(f, t, f, QuadratureMethod::Fft));
}
BENCHMARK(BM_KernelQuadrature)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

static void BM_BirmanSchwingerApply(benchmark::State& state) {
  const auto proj = project_potential(make_potential("gaussian_well", {{"tilt", 0.5}}),
                                      TransverseBasis(kPi / 2.0, static_cast<int>(state.range(0))),
                                      Grid2D::centered(8.0, 0.1), 32);
  BSOperator op(proj);
  op.set_w(-1.0);
  Eigen::VectorXd in = Eigen::VectorXd::Ones(op.dimension()), out(op.dimension());
  for (auto _ : state) {
    op.apply_M(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_BirmanSchwingerApply)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_DirectApply(benchmark::State& state) {
  const double L = 12.0, h = 0.1;
  const auto proj = project_potential(make_potential("gaussian_well", {{"tilt", 0.5}}), TransverseBasis(kPi / 2.0, 8),
                                      Grid2D::centered(L, h), 32);
  const ModeCoupledOperator op = assemble_direct_operator(proj, 0.5, L, h, 8);
  Eigen::VectorXd in = Eigen::VectorXd::Ones(op.dimension()), out(op.dimension());
  for (auto _ : state) {
    op.apply(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_DirectApply)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
