#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "vrpp/meta.hpp"

using namespace vrpp;

namespace {

ReducedInstance instance(std::uint64_t seed, int n = 30, int m = 3) {
  std::mt19937_64 rng(seed);
  return fixtures::random_integer_instance(rng, n, false, m);
}

SearchParams quick() {
  SearchParams p;
  p.mu = 3;
  p.n_p = 2;
  p.n_i = 3;
  p.n_c = 2;
  p.gamma = 8;
  p.time_limit = 60;
  p.seed = 42;
  return p;
}

void same_log(const RunLog& a, const RunLog& b) {
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    CHECK(a.entries[k].start == b.entries[k].start);
    CHECK(a.entries[k].iteration == b.entries[k].iteration);
    CHECK(a.entries[k].z_primary == b.entries[k].z_primary);
    CHECK(a.entries[k].z_dist == b.entries[k].z_dist);
    CHECK(a.entries[k].best_so_far == b.entries[k].best_so_far);
  }
  CHECK(a.moves_evaluated == b.moves_evaluated);
  CHECK(a.moves_accepted == b.moves_accepted);
}

}  // namespace

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0, 1) != derive_seed(1, 1, 0));
  CHECK(derive_seed(7, 3, 4, 5) == derive_seed(7, 3, 4, 5));
}

TEST_CASE("random_initial") {
  auto red = instance(1, 3, 3);
  SearchContext ctx{&red, Sparsity(3), 1e-4};
  Rng rng(5);
  auto sol = random_initial(ctx, 3, rng);
  for (const auto& r : sol.routes) CHECK(r.size() == 1);
  CHECK(check_partition(sol, 3).empty());

  auto big = instance(2, 40, 4);
  SearchContext ctx2{&big, Sparsity(3), 1e-4};
  Rng a(9), b(9);
  auto s1 = random_initial(ctx2, 4, a);
  auto s2 = random_initial(ctx2, 4, b);
  CHECK(s1.routes == s2.routes);
  CHECK(check_partition(s1, 40).empty());
  Rng c(1);
  CHECK_THROWS(random_initial(ctx2, 0, c));
}

TEST_CASE("shake") {
  auto red = instance(3, 30, 3);
  SearchContext ctx{&red, Sparsity(2), 1e-4};
  Rng rng(1);
  auto sol = random_initial(ctx, 3, rng);
  const auto before = sol.routes;
  shake(sol, 0, ctx, rng);
  CHECK(sol.routes == before);
  for (int rep = 0; rep < 50; ++rep) {
    shake(sol, 1 + rep % 4, ctx, rng);
    CHECK(check_partition(sol, 30).empty());
    auto fresh = recompute(sol, ctx);
    CHECK(std::abs(fresh.z_primary - sol.z_primary) < 1e-9);
    CHECK(std::abs(fresh.z_dist - sol.z_dist) < 1e-9);
  }
}

TEST_CASE("ms_ls") {
  auto red = instance(4);
  auto p = quick();
  p.mu = 1;
  auto one = ms_ls(red, p);
  // Same stream as the first restart.
  SearchContext ctx{&red, p.h, p.omega};
  Rng rng(derive_seed(p.seed, 0, 0));
  auto sol = random_initial(ctx, red.fleet, rng);
  cls_descend(sol, build_neighbor_lists(red, p.gamma), ctx, rng);
  CHECK(one.best.routes == sol.routes);

  p.mu = 5;
  auto many = ms_ls(red, p);
  REQUIRE(many.log.entries.size() == 5);
  for (const auto& e : many.log.entries) CHECK(many.best.z_primary >= e.z_primary);
  CHECK(many.solution.objective == doctest::Approx(many.best.z_primary));
  CHECK(check_feasible(many.solution, red).empty());
  for (std::size_t k = 1; k < many.log.entries.size(); ++k)
    CHECK(many.log.entries[k].best_so_far >= many.log.entries[k - 1].best_so_far);
}

TEST_CASE("serial and parallel paths agree") {
  auto red = instance(5);
  auto p = quick();
  p.parallel = false;
  auto ls_serial = ms_ls(red, p);
  auto ils_serial = ms_ils(red, p);
  p.parallel = true;
  auto ls_par = ms_ls(red, p);
  auto ils_par = ms_ils(red, p);
  CHECK(ls_serial.best.routes == ls_par.best.routes);
  CHECK(ils_serial.best.routes == ils_par.best.routes);
  same_log(ls_serial.log, ls_par.log);
  same_log(ils_serial.log, ils_par.log);
}

TEST_CASE("ms_ils") {
  auto red = instance(6);
  auto p = quick();
  auto a = ms_ils(red, p);
  auto b = ms_ils(red, p);
  same_log(a.log, b.log);
  CHECK(a.best.routes == b.best.routes);
  CHECK(a.log.starts <= p.n_p);
  CHECK(check_feasible(a.solution, red).empty());
  for (std::size_t k = 1; k < a.log.entries.size(); ++k)
    CHECK(a.log.entries[k].best_so_far >= a.log.entries[k - 1].best_so_far);
  // Each start stops after n_i stalled iterations; improvements reset it.
  for (int s = 0; s < a.log.starts; ++s) {
    int improvements = 0;
    double best = -1e300;
    for (const auto& e : a.log.entries)
      if (e.start == s) {
        if (e.z_primary > best + kProfitEps) {
          if (e.iteration > 0) ++improvements;
          best = e.z_primary;
        }
      }
    CHECK(a.log.iterations_per_start[s] <= p.n_i + improvements);
  }

  // No perturbation and one child: the incumbent never moves.
  p.n_c = 1;
  p.shake_strength = 0;
  auto still = ms_ils(red, p);
  for (const auto& e : still.log.entries) {
    const auto& first = *std::find_if(still.log.entries.begin(), still.log.entries.end(),
                                      [&](const LogEntry& x) { return x.start == e.start; });
    CHECK(e.z_primary == first.z_primary);
    CHECK(e.z_dist == first.z_dist);
  }
  for (int it : still.log.iterations_per_start) CHECK(it == p.n_i);

  SearchParams bad = quick();
  bad.n_c = 0;
  CHECK_THROWS(ms_ils(red, bad));
}

TEST_CASE("improving-only acceptance keeps the incumbent at least as good") {
  auto red = instance(8);
  auto p = quick();
  p.improving_only = true;
  auto r = ms_ils(red, p);
  CHECK(check_feasible(r.solution, red).empty());
  CHECK(r.best.z_primary >= r.log.entries.front().z_primary);
}
