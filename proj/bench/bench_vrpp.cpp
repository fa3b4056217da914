// Route evaluation from scratch versus concatenation of cached pieces, and
// serial versus OpenMP multi-start search.

#include <benchmark/benchmark.h>

#include <random>

#include "support/fixtures.hpp"
#include "vrpp/concat.hpp"
#include "vrpp/meta.hpp"

using namespace vrpp;

namespace {

struct Setup {
  ReducedInstance red;
  std::vector<std::vector<int>> routes;
  std::vector<SubsequenceData> data;
  Sparsity h;
};

// Two routes of `len` customers each over an integer instance.
Setup make_setup(int len, Sparsity h) {
  std::mt19937_64 rng(7);
  Setup s{fixtures::random_integer_instance(rng, 2 * len, false), {}, {}, h};
  s.red.budget *= 3;  // longer feasible paths, larger frontiers
  auto all = fixtures::random_route(rng, 2 * len, 2 * len);
  s.routes = {{all.begin(), all.begin() + len}, {all.begin() + len, all.end()}};
  for (auto& r : s.routes) s.data.push_back(preprocess_route(RouteView::from_customers(r), s.red, h));
  return s;
}

// Evaluates moving customer `len/2` of route 0 into the middle of route 1.
void BM_SelectFromScratch(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const auto s = make_setup(len, Sparsity(3));
  const std::vector<Piece> pieces{{1, 0, len / 2, false}, {0, len / 2, len / 2 + 1, false}, {1, len / 2, len, false}};
  const auto seq = stitch(pieces, s.routes);
  for (auto _ : state) benchmark::DoNotOptimize(select(RouteView::from_customers(seq), s.red, s.h).profit);
}

void BM_ConcatThree(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const auto s = make_setup(len, Sparsity(3));
  const Piece prefix{1, 0, len / 2, false}, mid{0, len / 2, len / 2 + 1, false}, suffix{1, len / 2, len, false};
  for (auto _ : state) benchmark::DoNotOptimize(eval_concat3(prefix, mid, suffix, s.data, s.red, s.h));
}

void BM_ConcatGeneral(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const auto s = make_setup(len, Sparsity(3));
  const std::vector<Piece> pieces{{1, 0, len / 2, false}, {0, len / 2, len / 2 + 1, false}, {1, len / 2, len, false}};
  for (const auto& d : s.data) d.forward.segments(s.red, s.h);  // tables are built once per route
  for (auto _ : state) benchmark::DoNotOptimize(eval_concat_general(pieces, s.data, s.red, s.h));
}

void BM_MultiStart(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto red = fixtures::random_integer_instance(rng, 60, false, 3);
  SearchParams p;
  p.mu = 8;
  p.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(ms_ls(red, p).solution.objective);
}

}  // namespace

BENCHMARK(BM_SelectFromScratch)->Arg(10)->Arg(25)->Arg(50);
BENCHMARK(BM_ConcatThree)->Arg(10)->Arg(25)->Arg(50);
BENCHMARK(BM_ConcatGeneral)->Arg(10)->Arg(25)->Arg(50);
BENCHMARK(BM_MultiStart)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
