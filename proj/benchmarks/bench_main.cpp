#include <benchmark/benchmark.h>

#include <numbers>

#include "voa/axioms.hpp"
#include "voa/models.hpp"
#include "voa/smeared.hpp"
#include "voa/subalgebra.hpp"
#include "voa/unitarity.hpp"

using namespace voa;

static void BM_BuildVirasoro(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_virasoro(Scalar(1, 2), int(st.range(0))).total_dim());
}
BENCHMARK(BM_BuildVirasoro)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_BuildHeisenberg(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_heisenberg(int(st.range(0))).total_dim());
}
BENCHMARK(BM_BuildHeisenberg)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_BuildAffine(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_affine_sl2(1, int(st.range(0))).total_dim());
}
BENCHMARK(BM_BuildAffine)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_BorcherdsSweep(benchmark::State& st) {
  VOAModel m = build_heisenberg(int(st.range(0)));
  long long n = 0;
  for (auto _ : st) n = borcherds_sweep(m).instances;
  st.counters["instances"] = double(n);
}
BENCHMARK(BM_BorcherdsSweep)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_Products(benchmark::State& st) {
  VOAModel m = build_affine_sl2(1, 5);
  GradedVector a = m.basis_vector(2, 3), b = m.basis_vector(2, 0);
  for (auto _ : st)
    for (long q = -1; q <= 3; ++q) benchmark::DoNotOptimize(m.product(a, q, b));
}
BENCHMARK(BM_Products);

static void BM_PCTOperator(benchmark::State& st) {
  VOAModel m = build_affine_sl2(1, int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(pct_operator(m).ok());
}
BENCHMARK(BM_PCTOperator)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

static void BM_Closure(benchmark::State& st) {
  VOAModel h = build_heisenberg(int(st.range(0)));
  VOAModel t = tensor_product(h, h);
  GradedVector a = t.generators().front().vector;
  for (auto _ : st) benchmark::DoNotOptimize(close_unitary_subalgebra(t, {a}).level_dims());
}
BENCHMARK(BM_Closure)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_SmearedMatrix(benchmark::State& st) {
  VOAModel m = build_heisenberg(8);
  TestFunction f = TestFunction::bump(0, std::numbers::pi, int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(smeared_matrix(m, m.generators().front().vector, f).norm());
}
BENCHMARK(BM_SmearedMatrix)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
