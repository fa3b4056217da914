#include "vrpp/meta.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace vrpp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Larger profit first, then shorter exhaustive distance.
bool better(const ExhaustiveSolution& a, const ExhaustiveSolution& b) {
  if (a.z_primary > b.z_primary + kProfitEps) return true;
  if (a.z_primary < b.z_primary - kProfitEps) return false;
  return a.z_dist < b.z_dist - kProfitEps;
}

struct Descended {
  ExhaustiveSolution sol;
  DescentStats stats;
  double finished = 0.0;
};

void account(RunLog& log, const DescentStats& st) {
  ++log.descents;
  log.moves_evaluated += st.evaluated;
  log.moves_accepted += st.accepted;
  log.primary_decreases += st.primary_decreases;
}

}  // namespace

void SearchParams::validate() const {
  if (gamma < 1 || mu < 1 || n_p < 1 || n_i < 1 || n_c < 1)
    throw std::invalid_argument("search counts must all be >= 1");
  if (shake_strength < 0) throw std::invalid_argument("shake strength must be >= 0");
  if (!(time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
  if (omega < 0.0) throw std::invalid_argument("omega must be non-negative");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

ExhaustiveSolution random_initial(const SearchContext& ctx, int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("fleet size must be >= 1");
  std::vector<int> perm(static_cast<std::size_t>(ctx.red->n));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> routes(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < perm.size(); ++k) routes[k % static_cast<std::size_t>(m)].push_back(perm[k]);
  return make_solution(std::move(routes), ctx);
}

void shake(ExhaustiveSolution& sol, int strength, const SearchContext& ctx, Rng& rng) {
  const int n = ctx.red->n;
  const int m = static_cast<int>(sol.routes.size());
  if (n == 0) return;
  std::uniform_int_distribution<int> pick_customer(1, n), pick_route(0, m - 1);
  for (int s = 0; s < strength; ++s) {
    const int c = pick_customer(rng);
    const auto pc = sol.where[static_cast<std::size_t>(c)];
    auto src = sol.routes[static_cast<std::size_t>(pc.route)];
    const int len = pc.index + 1 < static_cast<int>(src.size()) && (rng() & 1) ? 2 : 1;
    std::vector<int> fragment(src.begin() + pc.index, src.begin() + pc.index + len);
    src.erase(src.begin() + pc.index, src.begin() + pc.index + len);

    const int target = pick_route(rng);
    if (target == pc.route) {
      std::uniform_int_distribution<int> at(0, static_cast<int>(src.size()));
      src.insert(src.begin() + at(rng), fragment.begin(), fragment.end());
      const int ids[1] = {pc.route};
      std::vector<std::vector<int>> seqs{std::move(src)};
      set_routes(sol, ids, seqs, ctx);
    } else {
      auto dst = sol.routes[static_cast<std::size_t>(target)];
      std::uniform_int_distribution<int> at(0, static_cast<int>(dst.size()));
      dst.insert(dst.begin() + at(rng), fragment.begin(), fragment.end());
      const int ids[2] = {pc.route, target};
      std::vector<std::vector<int>> seqs{std::move(src), std::move(dst)};
      set_routes(sol, ids, seqs, ctx);
    }
  }
}

LabelSummary label_summary(const ExhaustiveSolution& sol, const SearchContext& ctx) {
  LabelSummary out;
  std::size_t total = 0, nodes = 0;
  for (const auto& r : sol.routes) {
    const auto res = select(RouteView::from_customers(r), *ctx.red, ctx.h);
    total += res.stats.total_labels;
    nodes += res.stats.customer_nodes;
    out.max = std::max(out.max, res.stats.max_frontier);
  }
  out.mean = nodes == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(nodes);
  return out;
}

RunResult ms_ls(const ReducedInstance& red, const SearchParams& params) {
  params.validate();
  const auto t0 = Clock::now();
  const SearchContext ctx{&red, params.h, params.omega};
  const auto nl = build_neighbor_lists(red, params.gamma);
  std::vector<std::optional<Descended>> outcomes(static_cast<std::size_t>(params.mu));

#pragma omp parallel for schedule(dynamic, 1) if (params.parallel)
  for (int r = 0; r < params.mu; ++r) {
    if (r > 0 && seconds_since(t0) >= params.time_limit) continue;
    Rng rng(derive_seed(params.seed, 0, static_cast<std::uint64_t>(r)));
    Descended d{random_initial(ctx, red.fleet, rng), {}, 0.0};
    d.stats = cls_descend(d.sol, nl, ctx, rng);
    d.finished = seconds_since(t0);
    outcomes[static_cast<std::size_t>(r)] = std::move(d);
  }

  RunResult result;
  bool have = false;
  for (int r = 0; r < params.mu; ++r) {
    auto& o = outcomes[static_cast<std::size_t>(r)];
    if (!o) continue;
    account(result.log, o->stats);
    ++result.log.starts;
    result.log.iterations_per_start.push_back(0);
    if (!have || better(o->sol, result.best)) {
      result.best = o->sol;
      result.time_to_best = o->finished;
      have = true;
    }
    result.log.entries.push_back(
        LogEntry{r, 0, o->sol.z_primary, o->sol.z_dist, result.best.z_primary, o->finished});
  }
  result.solution = extract(result.best, ctx);
  result.labels = label_summary(result.best, ctx);
  result.wall_time = seconds_since(t0);
  return result;
}

RunResult ms_ils(const ReducedInstance& red, const SearchParams& params) {
  params.validate();
  const auto t0 = Clock::now();
  const SearchContext ctx{&red, params.h, params.omega};
  const auto nl = build_neighbor_lists(red, params.gamma);
  RunResult result;
  bool have = false;
  auto offer = [&](const ExhaustiveSolution& s) {
    if (!have || better(s, result.best)) {
      result.best = s;
      result.time_to_best = seconds_since(t0);
      have = true;
    }
  };

  for (int s = 0; s < params.n_p; ++s) {
    if (s > 0 && seconds_since(t0) >= params.time_limit) break;
    ++result.log.starts;
    Rng rng(derive_seed(params.seed, 1, static_cast<std::uint64_t>(s)));
    ExhaustiveSolution incumbent = random_initial(ctx, red.fleet, rng);
    account(result.log, cls_descend(incumbent, nl, ctx, rng));
    ExhaustiveSolution start_best = incumbent;
    offer(incumbent);
    result.log.entries.push_back(
        LogEntry{s, 0, incumbent.z_primary, incumbent.z_dist, result.best.z_primary, seconds_since(t0)});

    int stall = 0, iter = 0;
    std::vector<Descended> children(static_cast<std::size_t>(params.n_c));
    while (stall < params.n_i && seconds_since(t0) < params.time_limit) {
      ++iter;
#pragma omp parallel for schedule(dynamic, 1) if (params.parallel)
      for (int c = 0; c < params.n_c; ++c) {
        Rng crng(derive_seed(params.seed, 2 + static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(iter),
                             static_cast<std::uint64_t>(c)));
        auto& child = children[static_cast<std::size_t>(c)];
        child.sol = incumbent;
        shake(child.sol, params.shake_strength, ctx, crng);
        child.stats = cls_descend(child.sol, nl, ctx, crng);
      }
      std::size_t pick = 0;
      for (std::size_t c = 0; c < children.size(); ++c) {
        account(result.log, children[c].stats);
        if (c > 0 && better(children[c].sol, children[pick].sol)) pick = c;
      }
      const ExhaustiveSolution& best_child = children[pick].sol;
      if (best_child.z_primary > start_best.z_primary + kProfitEps) {
        stall = 0;
        start_best = best_child;
      } else {
        ++stall;
        if (better(best_child, start_best)) start_best = best_child;
      }
      offer(best_child);
      result.log.entries.push_back(
          LogEntry{s, iter, best_child.z_primary, best_child.z_dist, result.best.z_primary, seconds_since(t0)});
      if (!params.improving_only || better(best_child, incumbent)) incumbent = best_child;
    }
    result.log.iterations_per_start.push_back(iter);
  }
  result.solution = extract(result.best, ctx);
  result.labels = label_summary(result.best, ctx);
  result.wall_time = seconds_since(t0);
  return result;
}

}  // namespace vrpp
