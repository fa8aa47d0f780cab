#include <benchmark/benchmark.h>

#include <random>

#include "generators.hpp"
#include "s5/search.hpp"
#include "s5/semantics.hpp"
#include "s5/transform.hpp"

using namespace s5;

namespace {

std::vector<Formula> sample(std::size_t size, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(testing::random_formula(rng, size, {"p", "q", "r"}));
  return out;
}

void BM_ProveExample(benchmark::State& state) {
  const auto goal = parse_sequent("=> (r & p) -> (q -> [](<>(p & q) & <>r))");
  for (auto _ : state) benchmark::DoNotOptimize(prove(goal));
}
BENCHMARK(BM_ProveExample);

void BM_ProveRandom(benchmark::State& state) {
  const auto fs = sample(static_cast<std::size_t>(state.range(0)), 64, 7);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decide_formula(fs[i++ % fs.size()]));
}
BENCHMARK(BM_ProveRandom)->Arg(6)->Arg(10)->Arg(14)->Arg(18);

void BM_Oracle(benchmark::State& state) {
  const auto fs = sample(static_cast<std::size_t>(state.range(0)), 64, 7);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_validity(fs[i++ % fs.size()]));
}
BENCHMARK(BM_Oracle)->Arg(6)->Arg(10)->Arg(14);

void BM_CheckProof(benchmark::State& state) {
  auto pf = prove(parse_sequent("=> (r & p) -> (q -> [](<>(p & q) & <>r))")).proof;
  for (auto _ : state) benchmark::DoNotOptimize(check_proof(pf));
}
BENCHMARK(BM_CheckProof);

void BM_CutModal(benchmark::State& state) {
  auto left = prove(parse_sequent("[]p => <>p")).proof;
  auto right = prove(parse_sequent("<>p => []<>p")).proof;
  const auto d = parse_formula("<>p");
  for (auto _ : state) benchmark::DoNotOptimize(eliminate_cut(left, right, d));
}
BENCHMARK(BM_CutModal);

}  // namespace

BENCHMARK_MAIN();
