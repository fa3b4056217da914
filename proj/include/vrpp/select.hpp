#pragma once

#include <limits>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vrpp/label.hpp"
#include "vrpp/model.hpp"

namespace vrpp {

/// Sparsification parameter H: arc (i, j), i < j, between route positions
/// is kept when j - i <= H, or i is the origin depot, or j is the
/// destination depot. At most H - 1 consecutive customers can be skipped
/// away from the depots.
class Sparsity {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  constexpr Sparsity() = default;
  constexpr explicit Sparsity(int h) : h_(h) {
    if (h < 1) throw std::invalid_argument("sparsity H must be >= 1");
  }
  static constexpr Sparsity unbounded() { return Sparsity(kUnbounded); }

  constexpr int value() const { return h_; }
  constexpr bool is_unbounded() const { return h_ == kUnbounded; }

  /// Number of positions reachable from a node: min(H, count).
  constexpr int window(int count) const { return h_ < count ? h_ : count; }
  constexpr bool within(long long span) const { return span <= static_cast<long long>(h_); }

  std::string to_string() const { return is_unbounded() ? "inf" : std::to_string(h_); }
  static Sparsity parse(const std::string& text);

 private:
  int h_ = 3;
};

/// Arc-keeping rule on positions 0..route_len-1 (first and last are depots).
bool arc_kept(int i, int j, int route_len, Sparsity h);

/// All kept arcs in lexicographic order.
std::vector<std::pair<int, int>> sparsify_arcs(int route_len, Sparsity h);

/// Depot-delimited node sequence of one route.
struct RouteView {
  std::vector<int> nodes;

  static RouteView from_customers(std::span<const int> customers);
  int length() const { return static_cast<int>(nodes.size()); }
  int customers() const { return length() - 2; }
};

struct SelectStats {
  std::size_t max_frontier = 0;
  std::size_t total_labels = 0;  // summed over customer positions
  std::size_t customer_nodes = 0;

  double mean_frontier() const {
    return customer_nodes == 0 ? 0.0 : static_cast<double>(total_labels) / static_cast<double>(customer_nodes);
  }
};

struct SelectResult {
  double profit = 0.0;
  double resource = 0.0;
  std::vector<int> chosen;  // selected customers, in route order
  SelectStats stats;
};

/// Optimal order-preserving feasible subsequence of the route's customers
/// over the sparsified arc set.
SelectResult select(const RouteView& route, const ReducedInstance& red, Sparsity h);

}  // namespace vrpp
