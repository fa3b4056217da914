#include "vrpp/concat.hpp"

#include <algorithm>
#include <stdexcept>

namespace vrpp {

namespace {

long long first_in_window(long long pos, Sparsity h, long long floor) {
  return h.is_unbounded() ? floor : std::max(floor, pos - h.value());
}

// Appends `from` shifted by one arc, keeping labels with
// resource + extra_slack within budget. Frontiers are sorted by resource,
// so the scan stops at the first overflow.
void push_shifted(std::vector<Label>& out, const LabelFrontier& from, double dr, double dp, double extra_slack,
                  double budget) {
  for (const Label& s : from) {
    const double r = s.resource + dr;
    if (!fits(r + extra_slack, budget)) break;
    out.push_back(Label{r, s.profit + dp, kNoPred, kNoPred});
  }
}

}  // namespace

// ---------------------------------------------------------------------------

SegmentTable::SegmentTable(std::span<const int> nodes, const ReducedInstance& red, Sparsity h)
    : len_(static_cast<int>(nodes.size()) - 2), empty_profit_(red.p(0, 0)) {
  const int L = len_;
  const double budget = red.budget;
  row_.assign(static_cast<std::size_t>(L) + 2, 0);
  std::size_t offset = 0;
  for (int i = 1; i <= L; ++i) {
    row_[static_cast<std::size_t>(i)] = offset;
    offset += static_cast<std::size_t>(L - i + 1);
  }
  paths_.resize(offset);
  close_.resize(offset);
  open_.resize(offset);
  inner_.resize(offset);

  std::vector<Label> cand;
  for (int i = 1; i <= L; ++i) {
    const int ni = nodes[static_cast<std::size_t>(i)];
    const double r0i = red.r(0, ni);
    paths_[index(i, i)] = LabelFrontier(std::vector<Label>{Label{}});
    int last_nonempty = i;
    for (int x = i + 1; x <= L; ++x) {
      if (!h.within(static_cast<long long>(x) - last_nonempty)) break;  // nothing reaches x or beyond
      const int nx = nodes[static_cast<std::size_t>(x)];
      const double slack = r0i + red.r(nx, 0);
      cand.clear();
      for (long long y = first_in_window(x, h, i); y < x; ++y) {
        const int ny = nodes[static_cast<std::size_t>(y)];
        push_shifted(cand, paths_[index(i, static_cast<int>(y))], red.r(ny, nx), red.p(ny, nx), slack, budget);
      }
      paths_[index(i, x)] = LabelFrontier::from_candidates(cand);
      if (!paths_[index(i, x)].empty()) last_nonempty = x;
    }
    // Closing to the destination from any y in [i, b].
    for (int b = i; b <= L; ++b) {
      const int nb = nodes[static_cast<std::size_t>(b)];
      cand.clear();
      if (b > i) cand.assign(close_[index(i, b - 1)].begin(), close_[index(i, b - 1)].end());
      push_shifted(cand, paths_[index(i, b)], red.r(nb, 0), red.p(nb, 0), r0i, budget);
      close_[index(i, b)] = LabelFrontier::from_candidates(cand);
    }
  }
  for (int j = 1; j <= L; ++j) {
    const int nj = nodes[static_cast<std::size_t>(j)];
    for (int a = j; a >= 1; --a) {
      const int na = nodes[static_cast<std::size_t>(a)];
      cand.clear();
      if (a < j) cand.assign(open_[index(a + 1, j)].begin(), open_[index(a + 1, j)].end());
      push_shifted(cand, paths_[index(a, j)], red.r(0, na), red.p(0, na), red.r(nj, 0), budget);
      open_[index(a, j)] = LabelFrontier::from_candidates(cand);
    }
  }
  for (int b = 1; b <= L; ++b)
    for (int a = b; a >= 1; --a) {
      double best = inner_best(a + 1, b);
      const auto& c = close_[index(a, b)];
      if (!c.empty()) best = std::max(best, c.best().profit + red.p(0, nodes[static_cast<std::size_t>(a)]));
      inner_[index(a, b)] = best;
    }
}

const SegmentTable& DirectionalData::segments(const ReducedInstance& red, Sparsity h) const {
  if (!segments_) segments_ = std::make_shared<const SegmentTable>(nodes, red, h);
  return *segments_;
}

// ---------------------------------------------------------------------------

DirectionalData label_direction(std::span<const int> nodes, const ReducedInstance& red, Sparsity h) {
  DirectionalData out;
  out.nodes.assign(nodes.begin(), nodes.end());
  const int len = static_cast<int>(nodes.size());
  const int L = len - 2;
  const int last = len - 1;
  const double budget = red.budget;
  out.fwd.resize(static_cast<std::size_t>(len));
  out.bwd.resize(static_cast<std::size_t>(len));
  out.fwd[0] = LabelFrontier(std::vector<Label>{Label{}});
  out.bwd[static_cast<std::size_t>(last)] = LabelFrontier(std::vector<Label>{Label{}});

  std::vector<Label> cand;
  for (int x = 1; x <= L; ++x) {
    const int nx = nodes[static_cast<std::size_t>(x)];
    const double slack = red.r(nx, 0);
    cand.clear();
    push_shifted(cand, out.fwd[0], red.r(0, nx), red.p(0, nx), slack, budget);
    for (long long y = first_in_window(x, h, 1); y < x; ++y) {
      const int ny = nodes[static_cast<std::size_t>(y)];
      push_shifted(cand, out.fwd[static_cast<std::size_t>(y)], red.r(ny, nx), red.p(ny, nx), slack, budget);
    }
    out.fwd[static_cast<std::size_t>(x)] = LabelFrontier::from_candidates(cand);
    const std::size_t sz = out.fwd[static_cast<std::size_t>(x)].size();
    out.label_total += sz;
    out.label_max = std::max(out.label_max, sz);
  }
  for (int x = L; x >= 1; --x) {
    const int nx = nodes[static_cast<std::size_t>(x)];
    const double slack = red.r(0, nx);
    cand.clear();
    push_shifted(cand, out.bwd[static_cast<std::size_t>(last)], red.r(nx, 0), red.p(nx, 0), slack, budget);
    const long long stop = h.is_unbounded() ? L : std::min<long long>(L, static_cast<long long>(x) + h.value());
    for (long long y = x + 1; y <= stop; ++y) {
      const int ny = nodes[static_cast<std::size_t>(y)];
      push_shifted(cand, out.bwd[static_cast<std::size_t>(y)], red.r(nx, ny), red.p(nx, ny), slack, budget);
    }
    out.bwd[static_cast<std::size_t>(x)] = LabelFrontier::from_candidates(cand);
  }

  const double empty = red.p(0, 0);
  out.prefix_best.assign(static_cast<std::size_t>(L) + 1, empty);
  for (int k = 1; k <= L; ++k) {
    double best = out.prefix_best[static_cast<std::size_t>(k) - 1];
    const auto& f = out.fwd[static_cast<std::size_t>(k)];
    if (!f.empty()) best = std::max(best, f.best().profit + red.p(nodes[static_cast<std::size_t>(k)], 0));
    out.prefix_best[static_cast<std::size_t>(k)] = best;
  }
  out.suffix_best.assign(static_cast<std::size_t>(L) + 2, empty);
  for (int k = L; k >= 1; --k) {
    double best = out.suffix_best[static_cast<std::size_t>(k) + 1];
    const auto& b = out.bwd[static_cast<std::size_t>(k)];
    if (!b.empty()) best = std::max(best, b.best().profit + red.p(0, nodes[static_cast<std::size_t>(k)]));
    out.suffix_best[static_cast<std::size_t>(k)] = best;
  }
  return out;
}

SubsequenceData preprocess_route(const RouteView& route, const ReducedInstance& red, Sparsity h) {
  SubsequenceData data;
  data.forward = label_direction(route.nodes, red, h);
  std::vector<int> rev(route.nodes.rbegin(), route.nodes.rend());
  data.reversed = label_direction(rev, red, h);
  double dist = 0.0;
  for (std::size_t k = 0; k + 1 < route.nodes.size(); ++k) dist += red.d(route.nodes[k], route.nodes[k + 1]);
  data.distance = dist;
  return data;
}

PieceSpan locate(const Piece& piece, std::span<const SubsequenceData> data) {
  if (piece.route < 0 || static_cast<std::size_t>(piece.route) >= data.size())
    throw std::out_of_range("piece references an unknown route");
  const auto& dir = data[static_cast<std::size_t>(piece.route)].direction(piece.reversed);
  const int L = dir.customers();
  if (piece.begin < 0 || piece.end > L || piece.begin > piece.end)
    throw std::out_of_range("piece range outside its route");
  if (piece.reversed) return PieceSpan{&dir, L - piece.end + 1, L - piece.begin};
  return PieceSpan{&dir, piece.begin + 1, piece.end};
}

// ---------------------------------------------------------------------------

std::optional<double> sweep_merge(const LabelFrontier& f, const LabelFrontier& b, double junction_resource,
                                  double junction_profit, double budget) {
  std::optional<double> best;
  std::ptrdiff_t l = static_cast<std::ptrdiff_t>(b.size()) - 1;
  for (const Label& fk : f) {
    const double base = fk.resource + junction_resource;
    while (l >= 0 && !fits(base + b[static_cast<std::size_t>(l)].resource, budget)) --l;
    if (l < 0) break;
    const double value = fk.profit + junction_profit + b[static_cast<std::size_t>(l)].profit;
    if (!best || value > *best) best = value;
  }
  return best;
}

double eval_concat_general(std::span<const Piece> pieces, std::span<const SubsequenceData> data,
                           const ReducedInstance& red, Sparsity h) {
  struct View {
    const DirectionalData* dir;
    const SegmentTable* table;
    int a, len;
    long long base;
    int node(int s) const { return dir->nodes[static_cast<std::size_t>(a - 1 + s)]; }
  };
  std::vector<View> views;
  long long base = 0;
  for (const Piece& piece : pieces) {
    const PieceSpan span = locate(piece, data);
    if (piece.empty()) continue;
    views.push_back(View{span.dir, &span.dir->segments(red, h), span.a, piece.size(), base});
    base += piece.size();
  }
  const double budget = red.budget;
  double best = red.p(0, 0);

  // entering[k][s]: labels arriving at start position s of piece k through
  // a cross-piece arc.
  std::vector<std::vector<std::vector<Label>>> entering(views.size());
  for (std::size_t k = 0; k < views.size(); ++k)
    entering[k].resize(static_cast<std::size_t>(h.window(views[k].len)) + 1);

  std::vector<Label> cand;
  for (std::size_t k = 0; k < views.size(); ++k) {
    const View& v = views[k];
    const SegmentTable& t = *v.table;
    const int W = h.window(v.len);
    const int b = v.a + v.len - 1;
    best = std::max(best, t.inner_best(v.a, b));

    std::vector<LabelFrontier> start(static_cast<std::size_t>(W) + 1);
    for (int s = 1; s <= W; ++s) {
      start[static_cast<std::size_t>(s)] = LabelFrontier::from_candidates(entering[k][static_cast<std::size_t>(s)]);
      if (start[static_cast<std::size_t>(s)].empty()) continue;
      if (auto closed = sweep_merge(start[static_cast<std::size_t>(s)], t.close(v.a - 1 + s, b), 0.0, 0.0, budget))
        best = std::max(best, *closed);
    }

    // Paths ending inside this piece are covered by close() and
    // inner_best(); finish frontiers only matter for later pieces.
    const int first_finish = v.len - W + 1;
    for (int f = first_finish; f <= v.len; ++f) {
      if (k + 1 == views.size() || !h.within(views[k + 1].base + 1 - (v.base + f))) continue;
      const int nf = v.node(f);
      const double slack = red.r(nf, 0);
      const auto& opened = t.open(v.a, v.a - 1 + f);
      cand.assign(opened.begin(), opened.end());
      for (int s = 1; s <= std::min(W, f); ++s) {
        const auto& e = start[static_cast<std::size_t>(s)];
        if (e.empty()) continue;
        const auto& inside = t.paths(v.a - 1 + s, v.a - 1 + f);
        for (const Label& el : e) {
          if (!fits(el.resource + slack, budget)) break;
          push_shifted(cand, inside, el.resource, el.profit, slack, budget);
        }
      }
      const LabelFrontier finish = LabelFrontier::from_candidates(cand);
      if (finish.empty()) continue;

      const long long gf = v.base + f;
      for (std::size_t k2 = k + 1; k2 < views.size(); ++k2) {
        const View& w = views[k2];
        if (!h.within(w.base + 1 - gf)) break;
        for (int s2 = 1; s2 <= w.len && h.within(w.base + s2 - gf); ++s2) {
          const int ns = w.node(s2);
          push_shifted(entering[k2][static_cast<std::size_t>(s2)], finish, red.r(nf, ns), red.p(nf, ns), red.r(ns, 0),
                       budget);
        }
      }
    }
  }
  return best;
}

double eval_concat3(const Piece& prefix, std::span<const int> s0, const Piece& suffix,
                    std::span<const SubsequenceData> data, const ReducedInstance& red, Sparsity h) {
  if (s0.size() > 2) throw std::invalid_argument("middle fragment longer than two customers");
  const double budget = red.budget;
  const double empty = red.p(0, 0);

  const DirectionalData* A = nullptr;
  int k = 0;
  if (!prefix.empty()) {
    const PieceSpan span = locate(prefix, data);
    if (span.a != 1) throw std::invalid_argument("first piece is not a route prefix");
    A = span.dir;
    k = prefix.size();
  }
  const DirectionalData* B = nullptr;
  int t = 0, LB = 0;
  if (!suffix.empty()) {
    const PieceSpan span = locate(suffix, data);
    B = span.dir;
    LB = B->customers();
    if (span.b != LB) throw std::invalid_argument("last piece is not a route suffix");
    t = span.a;
  }

  double best = std::max(A ? A->prefix_best[static_cast<std::size_t>(k)] : empty,
                         B ? B->suffix_best[static_cast<std::size_t>(t)] : empty);

  const int m0 = static_cast<int>(s0.size());
  const int end = k + m0;
  LabelFrontier mid[2];
  auto node_at = [&](long long g) {
    return g <= k ? A->nodes[static_cast<std::size_t>(g)] : s0[static_cast<std::size_t>(g - k - 1)];
  };
  auto frontier_at = [&](long long g) -> const LabelFrontier& {
    return g <= k ? A->fwd[static_cast<std::size_t>(g)] : mid[g - k - 1];
  };

  // Phase 2: propagate through the simple arcs of s0, depot arcs included.
  std::vector<Label> cand;
  for (int g = k + 1; g <= end; ++g) {
    const int ng = node_at(g);
    const double slack = red.r(ng, 0);
    cand.clear();
    if (fits(red.r(0, ng) + slack, budget)) cand.push_back(Label{red.r(0, ng), red.p(0, ng), kNoPred, kNoPred});
    for (long long y = first_in_window(g, h, 1); y < g; ++y) {
      const int ny = node_at(y);
      push_shifted(cand, frontier_at(y), red.r(ny, ng), red.p(ny, ng), slack, budget);
    }
    mid[g - k - 1] = LabelFrontier::from_candidates(cand);
    if (!mid[g - k - 1].empty()) best = std::max(best, mid[g - k - 1].best().profit + red.p(ng, 0));
  }

  // Phase 3: junction arcs from the finish window of prefix ⊕ s0 into the
  // first positions of the suffix.
  if (B) {
    for (long long gi = first_in_window(end + 1, h, 1); gi <= end; ++gi) {
      const auto& f = frontier_at(gi);
      if (f.empty()) continue;
      const int ni = node_at(gi);
      for (int j = t; j <= LB && h.within(static_cast<long long>(end + 1 + (j - t)) - gi); ++j) {
        const int nj = B->nodes[static_cast<std::size_t>(j)];
        if (auto v = sweep_merge(f, B->bwd[static_cast<std::size_t>(j)], red.r(ni, nj), red.p(ni, nj), budget))
          best = std::max(best, *v);
      }
    }
  }
  return best;
}

double eval_concat3(const Piece& prefix, const Piece& s0, const Piece& suffix, std::span<const SubsequenceData> data,
                    const ReducedInstance& red, Sparsity h) {
  if (s0.size() > 2) throw std::invalid_argument("middle fragment longer than two customers");
  int nodes[2] = {0, 0};
  if (!s0.empty()) {
    const PieceSpan span = locate(s0, data);
    for (int i = 0; i < s0.size(); ++i) nodes[i] = span.dir->nodes[static_cast<std::size_t>(span.a + i)];
  }
  return eval_concat3(prefix, std::span<const int>(nodes, static_cast<std::size_t>(std::max(0, s0.size()))), suffix,
                      data, red, h);
}

std::vector<int> stitch(std::span<const Piece> pieces, std::span<const std::vector<int>> routes) {
  std::vector<int> out;
  for (const Piece& p : pieces) {
    const auto& r = routes[static_cast<std::size_t>(p.route)];
    if (p.reversed)
      for (int i = p.end - 1; i >= p.begin; --i) out.push_back(r[static_cast<std::size_t>(i)]);
    else
      for (int i = p.begin; i < p.end; ++i) out.push_back(r[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::size_t invalidate_and_refresh(std::vector<SubsequenceData>& caches, std::span<const std::vector<int>> routes,
                                   std::span<const int> changed, const ReducedInstance& red, Sparsity h) {
  caches.resize(routes.size());
  std::size_t rebuilt = 0;
  for (int id : changed) {
    caches[static_cast<std::size_t>(id)] =
        preprocess_route(RouteView::from_customers(routes[static_cast<std::size_t>(id)]), red, h);
    ++rebuilt;
  }
  return rebuilt;
}

}  // namespace vrpp
