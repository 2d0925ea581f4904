#include "toric/calabi.hpp"
#include "toric/cone.hpp"
#include "toric/curvature.hpp"
#include "toric/latlin.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace toric;

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> entry(-50, 50);
  latlin::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(latlin::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(6)->Arg(10);

void BM_IsGood(benchmark::State& state) {
  auto cone = c_pq(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_good(cone));
}
BENCHMARK(BM_IsGood)->Arg(2)->Arg(9);

void BM_IsGoodHigherDim(benchmark::State& state) {
  auto cone = c_km(static_cast<int>(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_good(cone));
}
BENCHMARK(BM_IsGoodHigherDim)->Arg(2)->Arg(4);

void BM_ScalarCurvature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = calabi::solve_A(n, 1, n - 1);
  auto pot = calabi::calabi_potential(n, s.a_param);
  auto points = interior_grid(pot, 16, 0);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(scalar_curvature(pot, points[i++ % points.size()]));
}
BENCHMARK(BM_ScalarCurvature)->Arg(2)->Arg(3);

void BM_SolveA(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(calabi::solve_A(2, 2, 3));
}
BENCHMARK(BM_SolveA);

}  // namespace

BENCHMARK_MAIN();
