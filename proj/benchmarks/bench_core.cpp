#include <benchmark/benchmark.h>

#include "saddlekit/diagnostics.hpp"
#include "saddlekit/stability.hpp"

using namespace saddlekit;

static void BM_BuildProfile(benchmark::State& state) {
  const NonlinearitySpec spec = builtin_nonlinearity("allen_cahn");
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_profile(spec, 8.0, nodes));
  }
}
BENCHMARK(BM_BuildProfile)->Arg(128)->Arg(512)->Arg(2048);

static void BM_Discretize(benchmark::State& state) {
  const NonlinearitySpec spec = builtin_nonlinearity("allen_cahn");
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(discretize(2, 12.0, h, spec));
  }
}
BENCHMARK(BM_Discretize)->Arg(8)->Arg(16);

static void BM_MaximalSolve(benchmark::State& state) {
  const NonlinearitySpec spec = builtin_nonlinearity("allen_cahn");
  const Profile1D profile = build_profile(spec, 8.0, 512);
  const double h = 1.0 / static_cast<double>(state.range(0));
  const TriOperator op = discretize(2, 12.0, h, spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate_maximal(op, spec, profile, 1e-10, 500));
  }
}
BENCHMARK(BM_MaximalSolve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_QuadraticForm(benchmark::State& state) {
  const NonlinearitySpec spec = builtin_nonlinearity("allen_cahn");
  const Profile1D profile = build_profile(spec, 8.0, 512);
  const TriOperator op = discretize(3, 24.0, 1.0 / 8.0, spec);
  const SaddleField field = iterate_maximal(op, spec, profile, 1e-10, 500);
  const SquareField sq = extend_odd(field);
  const FieldView view(sq, profile);
  const TestFunction tf =
      TestFunction::eta_uz(static_cast<double>(state.range(0)),
                           make_piecewise_eta({0.1, 10.0, 1.75}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadratic_form(view, tf));
  }
}
BENCHMARK(BM_QuadraticForm)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Energy(benchmark::State& state) {
  const NonlinearitySpec spec = builtin_nonlinearity("allen_cahn");
  const Profile1D profile = build_profile(spec, 8.0, 512);
  const TriOperator op = discretize(2, 12.0, 1.0 / 16.0, spec);
  const SaddleField field = iterate_maximal(op, spec, profile, 1e-10, 500);
  const SquareField sq = extend_odd(field);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy(sq, 12.0, spec));
  }
}
BENCHMARK(BM_Energy)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
