#include "vrpp/select.hpp"

#include <algorithm>
#include <stdexcept>

namespace vrpp {

Sparsity Sparsity::parse(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "infinity") return unbounded();
  std::size_t used = 0;
  const int value = std::stoi(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad sparsity value: " + text);
  return Sparsity(value);
}

bool arc_kept(int i, int j, int route_len, Sparsity h) {
  if (i >= j) return false;
  return i == 0 || j == route_len - 1 || h.within(static_cast<long long>(j) - i);
}

std::vector<std::pair<int, int>> sparsify_arcs(int route_len, Sparsity h) {
  if (route_len < 2) throw std::invalid_argument("a route has at least its two depot positions");
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < route_len; ++i)
    for (int j = i + 1; j < route_len; ++j)
      if (arc_kept(i, j, route_len, h)) arcs.emplace_back(i, j);
  return arcs;
}

RouteView RouteView::from_customers(std::span<const int> customers) {
  RouteView view;
  view.nodes.reserve(customers.size() + 2);
  view.nodes.push_back(0);
  view.nodes.insert(view.nodes.end(), customers.begin(), customers.end());
  view.nodes.push_back(0);
  return view;
}

SelectResult select(const RouteView& route, const ReducedInstance& red, Sparsity h) {
  const int len = route.length();
  const int last = len - 1;
  const auto& nodes = route.nodes;
  const double budget = red.budget;

  std::vector<LabelFrontier> frontier(static_cast<std::size_t>(len));
  frontier[0] = LabelFrontier(std::vector<Label>{Label{}});
  std::vector<Label> candidates;
  SelectResult result;

  for (int x = 1; x < last; ++x) {
    const int node = nodes[x];
    const double slack = red.r(node, 0);
    candidates.clear();
    auto extend_from = [&](int y) {
      const double ar = red.r(nodes[y], node);
      const double ap = red.p(nodes[y], node);
      const auto& from = frontier[y];
      for (std::size_t k = 0; k < from.size(); ++k) {
        const Label& s = from[k];
        if (!fits(s.resource + ar + slack, budget)) break;  // resources increase along the frontier
        candidates.push_back(extend_label(s, ar, ap, y, static_cast<std::int32_t>(k)));
      }
    };
    extend_from(0);
    const int first = h.is_unbounded() ? 1 : std::max(1, x - h.value());
    for (int y = first; y < x; ++y) extend_from(y);
    frontier[x] = LabelFrontier::from_candidates(candidates);

    result.stats.max_frontier = std::max(result.stats.max_frontier, frontier[x].size());
    result.stats.total_labels += frontier[x].size();
    ++result.stats.customer_nodes;
  }

  // Destination: every position connects to it. The direct depot arc is
  // always accepted.
  int best_pos = 0;
  double best_profit = red.p(nodes[0], nodes[last]);
  double best_resource = red.r(nodes[0], nodes[last]);
  for (int y = 1; y < last; ++y) {
    if (frontier[y].empty()) continue;
    const Label& top = frontier[y].best();
    const double value = top.profit + red.p(nodes[y], nodes[last]);
    if (value > best_profit) {
      best_profit = value;
      best_pos = y;
      best_resource = top.resource + red.r(nodes[y], nodes[last]);
    }
  }
  result.profit = best_profit;
  result.resource = best_resource;

  if (best_pos != 0) {
    int pos = best_pos;
    auto idx = static_cast<std::int32_t>(frontier[pos].size() - 1);
    while (pos != 0) {
      result.chosen.push_back(nodes[pos]);
      const Label& l = frontier[pos][static_cast<std::size_t>(idx)];
      pos = l.pred_pos;
      idx = l.pred_idx;
    }
    std::reverse(result.chosen.begin(), result.chosen.end());
  }
  return result;
}

}  // namespace vrpp
