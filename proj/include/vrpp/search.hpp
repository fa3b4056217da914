#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "vrpp/concat.hpp"
#include "vrpp/model.hpp"
#include "vrpp/select.hpp"

namespace vrpp {

using Rng = std::mt19937_64;

inline constexpr double kAcceptEps = 1e-9;

struct SearchContext {
  const ReducedInstance* red = nullptr;
  Sparsity h;
  double omega = 1e-4;
};

/// Exhaustive solution: exactly m customer sequences that jointly contain
/// every customer once. The VRPP solution is what select extracts from
/// each sequence.
struct ExhaustiveSolution {
  struct Position {
    int route = -1;
    int index = -1;
  };

  std::vector<std::vector<int>> routes;
  std::vector<SubsequenceData> caches;
  std::vector<double> route_profit;
  std::vector<double> route_dist;
  std::vector<Position> where;  // indexed by customer
  double z_primary = 0.0;
  double z_dist = 0.0;

  double z_prime(double omega) const { return z_primary - omega * z_dist; }
  int size(int route) const { return static_cast<int>(routes[static_cast<std::size_t>(route)].size()); }
};

ExhaustiveSolution make_solution(std::vector<std::vector<int>> routes, const SearchContext& ctx);

/// Replaces the listed routes and refreshes only their caches.
void set_routes(ExhaustiveSolution& sol, std::span<const int> ids, std::span<const std::vector<int>> new_routes,
                const SearchContext& ctx);

/// Objective values recomputed with select on every route.
struct Recomputed {
  double z_primary = 0.0;
  double z_dist = 0.0;
};
Recomputed recompute(const ExhaustiveSolution& sol, const SearchContext& ctx);

/// Partition property; returns a description of the first violation.
std::string check_partition(const ExhaustiveSolution& sol, int n);

/// The selected customers of every route, with objective values.
VrppSolution extract(const ExhaustiveSolution& sol, const SearchContext& ctx);

struct NeighborLists {
  std::vector<std::vector<int>> near;  // near[i]: closest customers to i
};

/// Γ nearest other customers by travel distance, ties by index.
NeighborLists build_neighbor_lists(const ReducedInstance& red, int gamma);

enum class MoveKind : std::uint8_t { relocate1, relocate2, swap11, swap12, swap22, two_opt, two_opt_star, cross };
std::string_view to_string(MoveKind kind);

/// Move anchored on customers u and v, with the positions they held when
/// the move was generated. v = -1 targets the empty route `rv`.
struct Move {
  MoveKind kind = MoveKind::relocate1;
  std::uint8_t variant = 0;  // relocate: 0 after v, 1 before v; 2-opt*: 0 tails, 1 reversed heads
  int u = 0, v = 0;
  int ru = 0, iu = 0, rv = 0, iv = 0;
};

/// Moves of all kinds for one (u, v) pair at the current positions.
void moves_for_pair(const ExhaustiveSolution& sol, const NeighborLists& nl, int u, int v, std::vector<Move>& out);

/// All moves of the current solution over shuffled (u, v) pairs.
std::vector<Move> generate_moves(const ExhaustiveSolution& sol, const NeighborLists& nl, Rng& rng);

struct MoveEval {
  bool valid = false;  // false for stale or null moves
  double delta_primary = 0.0;
  double delta_dist = 0.0;
  double delta = 0.0;  // change of z_prime
};

MoveEval evaluate_move(const Move& move, const ExhaustiveSolution& sol, const SearchContext& ctx);

/// Returns false (and leaves the solution untouched) for stale moves.
bool apply_move(const Move& move, ExhaustiveSolution& sol, const SearchContext& ctx);

/// Piece decomposition of a customer sequence against the incumbent routes:
/// maximal runs that are consecutive, forwards or backwards, in one route.
std::vector<Piece> decompose(std::span<const int> seq, const ExhaustiveSolution& sol);

/// Select profit of a candidate route through the concatenation evaluators.
double evaluate_sequence(std::span<const int> seq, const ExhaustiveSolution& sol, const SearchContext& ctx);

struct DescentStats {
  std::size_t passes = 0;
  std::size_t evaluated = 0;
  std::size_t accepted = 0;
  std::size_t primary_decreases = 0;  // accepted moves with lower z_primary
  double min_delta_primary = 0.0;
  std::vector<double> z_prime_trace;  // after each accepted move, when tracing
};

struct DescentOptions {
  bool trace = false;
};

DescentStats cls_descend(ExhaustiveSolution& sol, const NeighborLists& nl, const SearchContext& ctx, Rng& rng,
                         const DescentOptions& opts = {});

}  // namespace vrpp
