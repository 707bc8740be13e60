#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "submin/submin.hpp"

namespace {

using namespace submin;

// Greedy evaluation of the extension; r = n (k - 1) oracle calls.
void BM_Greedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Instance f = make_random_submodular(std::vector<int>(static_cast<std::size_t>(n), k), 1);
  const Rho rho = random_feasible_rho(f.domain(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(greedy(f.oracle, rho));
  state.SetItemsProcessed(state.iterations() * n * (k - 1));
}
BENCHMARK(BM_Greedy)->Args({4, 10})->Args({2, 100})->Args({50, 50});

void BM_Pava(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> base(len);
  for (double& v : base) v = noise(rng);
  std::vector<double> work(len);
  for (auto _ : state) {
    work = base;
    pava_nonincreasing_inplace(work);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(len));
}
BENCHMARK(BM_Pava)->Range(16, 1 << 14);

void BM_ProjectFeasible(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ProductDomain d = ProductDomain::uniform(50, k);
  BlockVector raw(d);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(-0.5, 1.5);
  for (double& v : raw.flat()) v = unit(rng);
  for (auto _ : state) benchmark::DoNotOptimize(project_feasible(raw));
}
BENCHMARK(BM_ProjectFeasible)->Arg(10)->Arg(50)->Arg(200);

// Fixed iteration counts, tolerance zero: cost per solver iteration.
void run_solver(benchmark::State& state, const Instance& f, const char* solver) {
  SolverConfig config;
  config.max_iter = static_cast<int>(state.range(0));
  config.tolerance = 0.0;
  for (auto _ : state) {
    if (std::string_view(solver) == "subgrad") {
      benchmark::DoNotOptimize(minimize_subgradient(f.oracle, config));
    } else {
      config.fw_variant = std::string_view(solver) == "fw" ? FwVariant::classic : FwVariant::pairwise;
      benchmark::DoNotOptimize(minimize_frankwolfe(f.oracle, config));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SubgradientFigure1(benchmark::State& state) { run_solver(state, make_figure1(51), "subgrad"); }
void BM_ClassicFwFigure1(benchmark::State& state) { run_solver(state, make_figure1(51), "fw"); }
void BM_PairwiseFwFigure1(benchmark::State& state) { run_solver(state, make_figure1(51), "pfw"); }
BENCHMARK(BM_SubgradientFigure1)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicFwFigure1)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseFwFigure1)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SubgradientDenoise(benchmark::State& state) {
  const Instance d = make_example("denoise", {{"n", "50"}, {"k", "50"}, {"alpha", "0.125"}});
  run_solver(state, d, "subgrad");
}
void BM_PairwiseFwDenoise(benchmark::State& state) {
  const Instance d = make_example("denoise", {{"n", "50"}, {"k", "50"}, {"alpha", "0.125"}});
  run_solver(state, d, "pfw");
}
BENCHMARK(BM_SubgradientDenoise)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseFwDenoise)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_DivideAndConquer(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Instance f = make_random_submodular(std::vector<int>{k, k, k}, 5);
  const SeparableQuadratic sep = SeparableQuadratic::unit(f.domain());
  for (auto _ : state) benchmark::DoNotOptimize(divide_and_conquer(f.oracle, sep));
}
BENCHMARK(BM_DivideAndConquer)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
