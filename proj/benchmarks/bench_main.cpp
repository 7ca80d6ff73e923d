#include <benchmark/benchmark.h>

#include "fedq/checks.hpp"

using namespace fedq;

namespace {

std::shared_ptr<const FedosovConnection> sphere(int order, bool perturbed) {
  const Truncation t = Truncation::for_order(order);
  std::vector<Scalar> pert;
  if (perturbed) pert = {Scalar(1)};
  return std::make_shared<FedosovConnection>(builtin_chart_s2(t.weight), WeylCurvature::scaled_omega(2, pert), t);
}

void BM_SphereConnection(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sphere(static_cast<int>(state.range(0)), state.range(1) != 0));
}
BENCHMARK(BM_SphereConnection)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

// Fresh star per iteration so the flat-section cache starts cold.
void BM_SphereStar(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  auto conn = sphere(K, false);
  Sampler s(11);
  FunctionJet u = s.jet(2, conn->trunc(), 8), v = s.jet(2, conn->trunc(), 8);
  for (auto _ : state) {
    FedosovStar star(conn);
    benchmark::DoNotOptimize(star(u, v));
  }
}
BENCHMARK(BM_SphereStar)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Invariant(benchmark::State& state) {
  PipelineOptions o;
  o.example = state.range(0) ? "s2-so3" : "r2-sl2";
  o.order = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_invariant(build_pipeline(o)));
}
BENCHMARK(BM_Invariant)->ArgsProduct({{0, 1}, {2, 3, 4}})->Unit(benchmark::kMillisecond);

void BM_GuttProduct(benchmark::State& state) {
  LieAlgebra L = builtin_so3();
  Sampler s(12);
  SymPoly a = s.poly(3, 3, 3, 6), b = s.poly(3, 3, 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(gutt_mul(a, b, L));
}
BENCHMARK(BM_GuttProduct)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
