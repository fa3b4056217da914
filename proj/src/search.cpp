#include "vrpp/search.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace vrpp {

namespace {

double sequence_distance(std::span<const int> seq, const ReducedInstance& red) {
  double total = 0.0;
  int prev = 0;
  for (int c : seq) {
    total += red.d(prev, c);
    prev = c;
  }
  return total + red.d(prev, 0);
}

void refresh_positions(ExhaustiveSolution& sol, int route) {
  const auto& r = sol.routes[static_cast<std::size_t>(route)];
  for (std::size_t i = 0; i < r.size(); ++i)
    sol.where[static_cast<std::size_t>(r[i])] = {route, static_cast<int>(i)};
}

bool in_list(const NeighborLists& nl, int of, int who) {
  const auto& l = nl.near[static_cast<std::size_t>(of)];
  return std::find(l.begin(), l.end(), who) != l.end();
}

// Symmetric kinds are generated from one anchor of each pair only.
bool owns_pair(const NeighborLists& nl, int u, int v) { return u < v || !in_list(nl, v, u); }

// New customer sequences of the routes a move rewrites.
struct Proposal {
  int count = 0;
  int ids[2] = {0, 0};
  std::vector<int> seq[2];
};

using Seq = std::vector<int>;

void append(Seq& out, const Seq& from, int begin, int end) {
  for (int i = begin; i < end; ++i) out.push_back(from[static_cast<std::size_t>(i)]);
}
void append_reversed(Seq& out, const Seq& from, int begin, int end) {
  for (int i = end - 1; i >= begin; --i) out.push_back(from[static_cast<std::size_t>(i)]);
}

bool still_valid(const Move& m, const ExhaustiveSolution& sol) {
  if (m.u < 1 || static_cast<std::size_t>(m.u) >= sol.where.size()) return false;
  const auto pu = sol.where[static_cast<std::size_t>(m.u)];
  if (pu.route != m.ru || pu.index != m.iu) return false;
  if (m.v < 0) return m.rv >= 0 && m.rv < static_cast<int>(sol.routes.size()) && sol.routes[m.rv].empty();
  if (static_cast<std::size_t>(m.v) >= sol.where.size()) return false;
  const auto pv = sol.where[static_cast<std::size_t>(m.v)];
  return pv.route == m.rv && pv.index == m.iv;
}

bool build_inter(const Move& m, const Seq& A, const Seq& B, Proposal& p) {
  const int LA = static_cast<int>(A.size()), LB = static_cast<int>(B.size());
  const int i = m.iu, j = m.iv;
  const bool has_x = i + 1 < LA, has_y = m.v >= 0 && j + 1 < LB;
  Seq& a = p.seq[0];
  Seq& b = p.seq[1];
  auto insert_into_b = [&](int first, int count) {
    if (m.v < 0) {
      append(b, A, first, first + count);
      return;
    }
    const int at = m.variant == 0 ? j + 1 : j;
    append(b, B, 0, at);
    append(b, A, first, first + count);
    append(b, B, at, LB);
  };
  switch (m.kind) {
    case MoveKind::relocate1:
    case MoveKind::relocate2: {
      const int len = m.kind == MoveKind::relocate1 ? 1 : 2;
      if (len == 2 && !has_x) return false;
      append(a, A, 0, i);
      append(a, A, i + len, LA);
      insert_into_b(i, len);
      return true;
    }
    case MoveKind::swap11:
      a = A;
      b = B;
      std::swap(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
      return true;
    case MoveKind::swap12:
      if (!has_x) return false;
      append(a, A, 0, i);
      a.push_back(B[static_cast<std::size_t>(j)]);
      append(a, A, i + 2, LA);
      append(b, B, 0, j);
      append(b, A, i, i + 2);
      append(b, B, j + 1, LB);
      return true;
    case MoveKind::swap22:
    case MoveKind::cross: {
      if (!has_x || !has_y) return false;
      const bool rev = m.kind == MoveKind::cross;
      append(a, A, 0, i);
      if (rev) append_reversed(a, B, j, j + 2); else append(a, B, j, j + 2);
      append(a, A, i + 2, LA);
      append(b, B, 0, j);
      if (rev) append_reversed(b, A, i, i + 2); else append(b, A, i, i + 2);
      append(b, B, j + 2, LB);
      return true;
    }
    case MoveKind::two_opt_star:
      if (m.variant == 0) {
        if (i == LA - 1 && j == LB - 1) return false;
        append(a, A, 0, i + 1);
        append(a, B, j + 1, LB);
        append(b, B, 0, j + 1);
        append(b, A, i + 1, LA);
      } else {
        append(a, A, 0, i + 1);
        append_reversed(a, B, 0, j + 1);
        append_reversed(b, A, i + 1, LA);
        append(b, B, j + 1, LB);
      }
      return true;
    case MoveKind::two_opt:
      return false;
  }
  return false;
}

bool build_intra(const Move& m, const Seq& S, Proposal& p) {
  const int L = static_cast<int>(S.size());
  const int i = m.iu, j = m.iv;
  if (i == j) return false;
  Seq& s = p.seq[0];
  switch (m.kind) {
    case MoveKind::relocate1:
    case MoveKind::relocate2: {
      const int len = m.kind == MoveKind::relocate1 ? 1 : 2;
      if (len == 2 && (i + 1 >= L || j == i + 1)) return false;
      Seq rest;
      append(rest, S, 0, i);
      append(rest, S, i + len, L);
      const int jv = j < i ? j : j - len;
      const int at = m.variant == 0 ? jv + 1 : jv;
      append(s, rest, 0, at);
      append(s, S, i, i + len);
      append(s, rest, at, static_cast<int>(rest.size()));
      return true;
    }
    case MoveKind::swap11:
      s = S;
      std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
      return true;
    case MoveKind::swap12:
      if (i + 1 >= L || j == i + 1) return false;
      if (j < i) {
        append(s, S, 0, j);
        append(s, S, i, i + 2);
        append(s, S, j + 1, i);
        s.push_back(S[static_cast<std::size_t>(j)]);
        append(s, S, i + 2, L);
      } else {
        append(s, S, 0, i);
        s.push_back(S[static_cast<std::size_t>(j)]);
        append(s, S, i + 2, j);
        append(s, S, i, i + 2);
        append(s, S, j + 1, L);
      }
      return true;
    case MoveKind::swap22: {
      const int lo = std::min(i, j), hi = std::max(i, j);
      if (hi - lo < 2 || hi + 1 >= L) return false;
      append(s, S, 0, lo);
      append(s, S, hi, hi + 2);
      append(s, S, lo + 2, hi);
      append(s, S, lo, lo + 2);
      append(s, S, hi + 2, L);
      return true;
    }
    case MoveKind::two_opt: {
      const int lo = std::min(i, j), hi = std::max(i, j);
      if (hi - lo < 2) return false;
      append(s, S, 0, lo + 1);
      append_reversed(s, S, lo + 1, hi + 1);
      append(s, S, hi + 1, L);
      return true;
    }
    case MoveKind::two_opt_star:
    case MoveKind::cross:
      return false;
  }
  return false;
}

bool build(const Move& m, const ExhaustiveSolution& sol, Proposal& p) {
  if (!still_valid(m, sol)) return false;
  p.seq[0].clear();
  p.seq[1].clear();
  const Seq& A = sol.routes[static_cast<std::size_t>(m.ru)];
  if (m.ru != m.rv) {
    p.count = 2;
    p.ids[0] = m.ru;
    p.ids[1] = m.rv;
    return build_inter(m, A, sol.routes[static_cast<std::size_t>(m.rv)], p);
  }
  p.count = 1;
  p.ids[0] = m.ru;
  if (!build_intra(m, A, p)) return false;
  return p.seq[0] != A;
}

}  // namespace

// ---------------------------------------------------------------------------

ExhaustiveSolution make_solution(std::vector<std::vector<int>> routes, const SearchContext& ctx) {
  const auto& red = *ctx.red;
  ExhaustiveSolution sol;
  const std::size_t m = routes.size();
  sol.routes = std::move(routes);
  sol.caches.resize(m);
  sol.route_profit.assign(m, 0.0);
  sol.route_dist.assign(m, 0.0);
  sol.where.assign(static_cast<std::size_t>(red.n) + 1, {});
  for (std::size_t k = 0; k < m; ++k) {
    for (int c : sol.routes[k])
      if (c < 1 || c > red.n) throw InputError("customer index out of range: " + std::to_string(c));
    sol.caches[k] = preprocess_route(RouteView::from_customers(sol.routes[k]), red, ctx.h);
    sol.route_profit[k] = sol.caches[k].profit();
    sol.route_dist[k] = sequence_distance(sol.routes[k], red);
    sol.z_primary += sol.route_profit[k];
    sol.z_dist += sol.route_dist[k];
    refresh_positions(sol, static_cast<int>(k));
  }
  return sol;
}

void set_routes(ExhaustiveSolution& sol, std::span<const int> ids, std::span<const std::vector<int>> new_routes,
                const SearchContext& ctx) {
  const auto& red = *ctx.red;
  for (std::size_t k = 0; k < ids.size(); ++k) sol.routes[static_cast<std::size_t>(ids[k])] = new_routes[k];
  invalidate_and_refresh(sol.caches, sol.routes, ids, red, ctx.h);
  for (int id : ids) {
    const auto r = static_cast<std::size_t>(id);
    const double profit = sol.caches[r].profit();
    const double dist = sequence_distance(sol.routes[r], red);
    sol.z_primary += profit - sol.route_profit[r];
    sol.z_dist += dist - sol.route_dist[r];
    sol.route_profit[r] = profit;
    sol.route_dist[r] = dist;
    refresh_positions(sol, id);
  }
}

Recomputed recompute(const ExhaustiveSolution& sol, const SearchContext& ctx) {
  Recomputed out;
  for (const auto& r : sol.routes) {
    out.z_primary += select(RouteView::from_customers(r), *ctx.red, ctx.h).profit;
    out.z_dist += sequence_distance(r, *ctx.red);
  }
  return out;
}

std::string check_partition(const ExhaustiveSolution& sol, int n) {
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& r : sol.routes)
    for (int c : r) {
      if (c < 1 || c > n) return "customer index out of range: " + std::to_string(c);
      if (seen[static_cast<std::size_t>(c)]++) return "customer " + std::to_string(c) + " appears twice";
    }
  for (int c = 1; c <= n; ++c)
    if (!seen[static_cast<std::size_t>(c)]) return "customer " + std::to_string(c) + " missing";
  return {};
}

VrppSolution extract(const ExhaustiveSolution& sol, const SearchContext& ctx) {
  VrppSolution out;
  for (const auto& r : sol.routes) {
    auto res = select(RouteView::from_customers(r), *ctx.red, ctx.h);
    if (!res.chosen.empty()) out.routes.push_back(std::move(res.chosen));
  }
  out.objective = generic_objective(out, *ctx.red);
  out.native_objective = native_objective(out, *ctx.red);
  return out;
}

NeighborLists build_neighbor_lists(const ReducedInstance& red, int gamma) {
  if (gamma < 1) throw std::invalid_argument("neighbour list size must be >= 1");
  const int n = red.n;
  NeighborLists nl;
  nl.near.resize(static_cast<std::size_t>(n) + 1);
  const int keep = std::min(gamma, std::max(0, n - 1));
  std::vector<int> others;
  for (int i = 1; i <= n; ++i) {
    others.clear();
    for (int j = 1; j <= n; ++j)
      if (j != i) others.push_back(j);
    auto closer = [&](int a, int b) {
      const double da = red.d(i, a), db = red.d(i, b);
      return da != db ? da < db : a < b;
    };
    std::partial_sort(others.begin(), others.begin() + keep, others.end(), closer);
    nl.near[static_cast<std::size_t>(i)].assign(others.begin(), others.begin() + keep);
  }
  return nl;
}

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::relocate1: return "relocate1";
    case MoveKind::relocate2: return "relocate2";
    case MoveKind::swap11: return "swap11";
    case MoveKind::swap12: return "swap12";
    case MoveKind::swap22: return "swap22";
    case MoveKind::two_opt: return "2opt";
    case MoveKind::two_opt_star: return "2opt*";
    case MoveKind::cross: return "cross";
  }
  return "unknown";
}

void moves_for_pair(const ExhaustiveSolution& sol, const NeighborLists& nl, int u, int v, std::vector<Move>& out) {
  const auto pu = sol.where[static_cast<std::size_t>(u)];
  const auto pv = sol.where[static_cast<std::size_t>(v)];
  const bool has_x = pu.index + 1 < sol.size(pu.route);
  const bool has_y = pv.index + 1 < sol.size(pv.route);
  const bool owner = owns_pair(nl, u, v);
  auto emit = [&](MoveKind kind, std::uint8_t variant = 0) {
    out.push_back(Move{kind, variant, u, v, pu.route, pu.index, pv.route, pv.index});
  };
  emit(MoveKind::relocate1, 0);
  emit(MoveKind::relocate1, 1);
  if (pu.route != pv.route) {
    if (has_x) {
      emit(MoveKind::relocate2, 0);
      emit(MoveKind::relocate2, 1);
      emit(MoveKind::swap12);
    }
    if (owner) {
      emit(MoveKind::swap11);
      if (has_x && has_y) {
        emit(MoveKind::swap22);
        emit(MoveKind::cross);
      }
      emit(MoveKind::two_opt_star, 0);
      emit(MoveKind::two_opt_star, 1);
    }
  } else {
    const bool x_is_v = pv.index == pu.index + 1;
    if (has_x && !x_is_v) {
      emit(MoveKind::relocate2, 0);
      emit(MoveKind::relocate2, 1);
      emit(MoveKind::swap12);
    }
    if (owner) {
      emit(MoveKind::swap11);
      if (has_x && has_y && std::abs(pu.index - pv.index) >= 2) emit(MoveKind::swap22);
      if (std::abs(pu.index - pv.index) >= 2) emit(MoveKind::two_opt);
    }
  }
}

namespace {

// Relocations into an empty route; all empty routes are equivalent, so
// only the first is used.
void moves_to_empty(const ExhaustiveSolution& sol, int u, std::vector<Move>& out) {
  const auto pu = sol.where[static_cast<std::size_t>(u)];
  for (int r = 0; r < static_cast<int>(sol.routes.size()); ++r) {
    if (r == pu.route || !sol.routes[static_cast<std::size_t>(r)].empty()) continue;
    out.push_back(Move{MoveKind::relocate1, 0, u, -1, pu.route, pu.index, r, 0});
    if (pu.index + 1 < sol.size(pu.route)) out.push_back(Move{MoveKind::relocate2, 0, u, -1, pu.route, pu.index, r, 0});
    return;
  }
}

std::vector<int> shuffled_customers(int n, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

}  // namespace

std::vector<Move> generate_moves(const ExhaustiveSolution& sol, const NeighborLists& nl, Rng& rng) {
  std::vector<Move> out;
  const int n = static_cast<int>(sol.where.size()) - 1;
  std::vector<int> nbrs;
  for (int u : shuffled_customers(n, rng)) {
    nbrs = nl.near[static_cast<std::size_t>(u)];
    std::shuffle(nbrs.begin(), nbrs.end(), rng);
    for (int v : nbrs) moves_for_pair(sol, nl, u, v, out);
    moves_to_empty(sol, u, out);
  }
  return out;
}

std::vector<Piece> decompose(std::span<const int> seq, const ExhaustiveSolution& sol) {
  std::vector<Piece> pieces;
  std::size_t k = 0;
  while (k < seq.size()) {
    const auto start = sol.where[static_cast<std::size_t>(seq[k])];
    int dir = 0;
    std::size_t e = k + 1;
    if (e < seq.size()) {
      const auto next = sol.where[static_cast<std::size_t>(seq[e])];
      if (next.route == start.route && std::abs(next.index - start.index) == 1) dir = next.index - start.index;
    }
    if (dir != 0)
      while (e < seq.size()) {
        const auto next = sol.where[static_cast<std::size_t>(seq[e])];
        if (next.route != start.route || next.index != start.index + dir * static_cast<int>(e - k)) break;
        ++e;
      }
    const int count = static_cast<int>(e - k);
    if (dir >= 0)
      pieces.push_back(Piece{start.route, start.index, start.index + count, false});
    else
      pieces.push_back(Piece{start.route, start.index - count + 1, start.index + 1, true});
    k = e;
  }
  return pieces;
}

double evaluate_sequence(std::span<const int> seq, const ExhaustiveSolution& sol, const SearchContext& ctx) {
  const auto& red = *ctx.red;
  if (seq.empty()) return red.p(0, 0);
  const auto pieces = decompose(seq, sol);
  const auto first = locate(pieces.front(), sol.caches);
  const auto last = locate(pieces.back(), sol.caches);
  const bool has_prefix = first.a == 1;
  const bool has_suffix = last.b == last.dir->customers() && (pieces.size() > 1 || !has_prefix);
  const int prefix_len = has_prefix ? pieces.front().size() : 0;
  const int suffix_len = has_suffix ? pieces.back().size() : 0;
  const int mid = static_cast<int>(seq.size()) - prefix_len - suffix_len;
  if (mid <= 2) {
    const Piece prefix = has_prefix ? pieces.front() : Piece{};
    const Piece suffix = has_suffix ? pieces.back() : Piece{};
    return eval_concat3(prefix, seq.subspan(static_cast<std::size_t>(prefix_len), static_cast<std::size_t>(mid)),
                        suffix, sol.caches, red, ctx.h);
  }
  return eval_concat_general(pieces, sol.caches, red, ctx.h);
}

MoveEval evaluate_move(const Move& move, const ExhaustiveSolution& sol, const SearchContext& ctx) {
  thread_local Proposal p;
  MoveEval ev;
  if (!build(move, sol, p)) return ev;
  ev.valid = true;
  for (int k = 0; k < p.count; ++k) {
    const auto id = static_cast<std::size_t>(p.ids[k]);
    ev.delta_primary += evaluate_sequence(p.seq[k], sol, ctx) - sol.route_profit[id];
    ev.delta_dist += sequence_distance(p.seq[k], *ctx.red) - sol.route_dist[id];
  }
  ev.delta = ev.delta_primary - ctx.omega * ev.delta_dist;
  return ev;
}

bool apply_move(const Move& move, ExhaustiveSolution& sol, const SearchContext& ctx) {
  Proposal p;
  if (!build(move, sol, p)) return false;
  std::vector<int> ids(p.ids, p.ids + p.count);
  std::vector<std::vector<int>> seqs(p.seq, p.seq + p.count);
  set_routes(sol, ids, seqs, ctx);
  return true;
}

DescentStats cls_descend(ExhaustiveSolution& sol, const NeighborLists& nl, const SearchContext& ctx, Rng& rng,
                         const DescentOptions& opts) {
  DescentStats stats;
  const int n = ctx.red->n;
  std::vector<Move> moves;
  std::vector<int> nbrs;
  bool improved = true;
  while (improved) {
    improved = false;
    ++stats.passes;
    for (int u : shuffled_customers(n, rng)) {
      nbrs = nl.near[static_cast<std::size_t>(u)];
      std::shuffle(nbrs.begin(), nbrs.end(), rng);
      nbrs.push_back(-1);  // sentinel: relocations into an empty route
      for (int v : nbrs) {
        moves.clear();
        if (v < 0)
          moves_to_empty(sol, u, moves);
        else
          moves_for_pair(sol, nl, u, v, moves);
        for (const Move& m : moves) {
          const MoveEval ev = evaluate_move(m, sol, ctx);
          ++stats.evaluated;
          if (!ev.valid || ev.delta <= kAcceptEps) continue;
          apply_move(m, sol, ctx);
          ++stats.accepted;
          if (ev.delta_primary < -kProfitEps) ++stats.primary_decreases;
          stats.min_delta_primary = std::min(stats.min_delta_primary, ev.delta_primary);
          if (opts.trace) stats.z_prime_trace.push_back(sol.z_prime(ctx.omega));
          improved = true;
          break;
        }
      }
    }
  }
  return stats;
}

}  // namespace vrpp
