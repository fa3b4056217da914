#pragma once

#include <cstdint>
#include <vector>

#include "vrpp/search.hpp"

namespace vrpp {

struct SearchParams {
  Sparsity h{3};
  double omega = 1e-4;
  int gamma = 20;
  int mu = 5;        // MS-LS restarts
  int n_p = 3;       // MS-ILS starts
  int n_i = 10;      // MS-ILS iterations without improvement
  int n_c = 3;       // MS-ILS children per iteration
  double time_limit = 300.0;  // seconds
  std::uint64_t seed = 1;
  int shake_strength = 2;
  bool improving_only = false;  // MS-ILS: keep the incumbent unless the best child beats it
  bool parallel = true;         // OpenMP over restarts / children

  void validate() const;
};

/// Deterministic child seed of (seed, a, b, c).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

ExhaustiveSolution random_initial(const SearchContext& ctx, int m, Rng& rng);

/// `strength` relocations of 1-2 consecutive customers to random positions.
void shake(ExhaustiveSolution& sol, int strength, const SearchContext& ctx, Rng& rng);

struct LogEntry {
  int start = 0;       // restart (MS-LS) or start (MS-ILS)
  int iteration = 0;   // 0 for the initial descent
  double z_primary = 0.0;
  double z_dist = 0.0;
  double best_so_far = 0.0;
  double elapsed = 0.0;
};

struct RunLog {
  std::vector<LogEntry> entries;
  std::size_t descents = 0;
  std::size_t moves_evaluated = 0;
  std::size_t moves_accepted = 0;
  std::size_t primary_decreases = 0;
  int starts = 0;
  std::vector<int> iterations_per_start;
};

struct LabelSummary {
  double mean = 0.0;
  std::size_t max = 0;
};

struct RunResult {
  ExhaustiveSolution best;
  VrppSolution solution;
  RunLog log;
  LabelSummary labels;
  double wall_time = 0.0;
  double time_to_best = 0.0;
};

/// Frontier sizes of select over the routes of a solution.
LabelSummary label_summary(const ExhaustiveSolution& sol, const SearchContext& ctx);

RunResult ms_ls(const ReducedInstance& red, const SearchParams& params);
RunResult ms_ils(const ReducedInstance& red, const SearchParams& params);

}  // namespace vrpp
