// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <vector>

#include "fsb/initial_data.hpp"
#include "fsb/kernels.hpp"
#include "fsb/pressure.hpp"

using namespace fsb;

namespace {

BoundaryMesh mesh_for(std::size_t n_surface) {
  return build_boundary_mesh(sample_initial_state(make_reference_data(1.0), n_surface + 1).curve, n_surface / 2);
}

void assemble_args(benchmark::internal::Benchmark *b) {
  for (int n : {64, 128, 256}) b->Arg(n);
  b->Unit(benchmark::kMillisecond);
}

void BM_AssembleSerial(benchmark::State &state) {
  const auto mesh = mesh_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::assemble_serial(mesh));
  state.counters["panels"] = static_cast<double>(mesh.size());
}

void BM_AssembleParallel(benchmark::State &state) {
  const auto mesh = mesh_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::assemble_parallel(mesh));
  state.counters["panels"] = static_cast<double>(mesh.size());
  state.counters["threads"] = kernels::max_threads();
}

struct EvalSetup {
  BoundaryMesh mesh;
  CauchyData data;
  std::vector<Vec2> points;
};

EvalSetup eval_setup(std::size_t n_surface) {
  const auto s = sample_initial_state(make_reference_data(1.0), n_surface + 1);
  const auto solve = solve_flow(s, n_surface / 2);
  EvalSetup e{solve.mesh(), solve.phi, {}};
  e.points = interior_lattice(e.mesh, LatticeSpec{32, 32}, 0.0);
  return e;
}

void BM_EvaluateSerial(benchmark::State &state) {
  const auto e = eval_setup(static_cast<std::size_t>(state.range(0)));
  const kernels::LayerDensities d{e.data.value, e.data.flux, e.data.slope, e.data.offset};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_serial(e.mesh, d, e.points, true));
  state.counters["points"] = static_cast<double>(e.points.size());
}

void BM_EvaluateParallel(benchmark::State &state) {
  const auto e = eval_setup(static_cast<std::size_t>(state.range(0)));
  const kernels::LayerDensities d{e.data.value, e.data.flux, e.data.slope, e.data.offset};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_parallel(e.mesh, d, e.points, true));
  state.counters["points"] = static_cast<double>(e.points.size());
  state.counters["threads"] = kernels::max_threads();
}

} // namespace

BENCHMARK(BM_AssembleSerial)->Apply(assemble_args);
BENCHMARK(BM_AssembleParallel)->Apply(assemble_args);
BENCHMARK(BM_EvaluateSerial)->Apply(assemble_args);
BENCHMARK(BM_EvaluateParallel)->Apply(assemble_args);

BENCHMARK_MAIN();
