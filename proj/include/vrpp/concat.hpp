#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "vrpp/label.hpp"
#include "vrpp/select.hpp"

namespace vrpp {

// Frontiers for every pair of positions (i <= j, 1-based customer
// positions) of one route direction. Built on first use by intra-route
// evaluations, since any segment of the route can become a piece.
class SegmentTable {
 public:
  SegmentTable(std::span<const int> nodes, const ReducedInstance& red, Sparsity h);

  int customers() const { return len_; }
  /// In-route paths from i to j (no depot arcs), starting at (0,0) on i.
  const LabelFrontier& paths(int i, int j) const { return paths_[index(i, j)]; }
  /// Paths from i that close to the destination depot from some y in [i, b].
  const LabelFrontier& close(int i, int b) const { return close_[index(i, b)]; }
  /// Paths leaving the origin depot into some x in [a, j] and ending at j.
  const LabelFrontier& open(int a, int j) const { return open_[index(a, j)]; }
  /// Best depot-to-depot profit using customers of [a, b] only.
  double inner_best(int a, int b) const { return a > b ? empty_profit_ : inner_[index(a, b)]; }

 private:
  std::size_t index(int i, int j) const { return row_[static_cast<std::size_t>(i)] + static_cast<std::size_t>(j - i); }

  int len_ = 0;
  double empty_profit_ = 0.0;
  std::vector<std::size_t> row_;
  std::vector<LabelFrontier> paths_, close_, open_;
  std::vector<double> inner_;
};

/// Labeling data of one direction of travel along a route. Positions run
/// 0..L+1 with the depot at both ends.
struct DirectionalData {
  std::vector<int> nodes;
  std::vector<LabelFrontier> fwd;    // origin depot -> k, positions <= k
  std::vector<LabelFrontier> bwd;    // k -> destination depot, positions >= k
  std::vector<double> prefix_best;   // [k]: best closed path within c_1..c_k, k = 0..L
  std::vector<double> suffix_best;   // [k]: best closed path within c_k..c_L, k = 1..L+1
  std::size_t label_total = 0;
  std::size_t label_max = 0;

  int customers() const { return static_cast<int>(nodes.size()) - 2; }
  double profit() const { return prefix_best.back(); }

  const SegmentTable& segments(const ReducedInstance& red, Sparsity h) const;

 private:
  mutable std::shared_ptr<const SegmentTable> segments_;
};

/// Preprocessed data for one route, in both directions of travel. The
/// reversed direction visits the same customers backwards between the
/// same origin and destination depots.
struct SubsequenceData {
  DirectionalData forward;
  DirectionalData reversed;
  double distance = 0.0;  // exhaustive route distance, depot to depot

  const DirectionalData& direction(bool rev) const { return rev ? reversed : forward; }
  double profit() const { return forward.profit(); }
};

DirectionalData label_direction(std::span<const int> nodes, const ReducedInstance& red, Sparsity h);
SubsequenceData preprocess_route(const RouteView& route, const ReducedInstance& red, Sparsity h);

/// A run of consecutive customers [begin, end) of an incumbent route,
/// indexed in the route's stored order. Reversed pieces are traversed from
/// end-1 down to begin.
struct Piece {
  int route = 0;
  int begin = 0;
  int end = 0;
  bool reversed = false;

  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
};

/// 1-based positions [a, b] of a piece in its direction's coordinates.
struct PieceSpan {
  const DirectionalData* dir = nullptr;
  int a = 1;
  int b = 0;
};
PieceSpan locate(const Piece& piece, std::span<const SubsequenceData> data);

/// Best profit of the pair (f_k, b_l) joined by one junction arc that
/// respects the budget, by a two-pointer sweep. Empty when no pair fits.
std::optional<double> sweep_merge(const LabelFrontier& f, const LabelFrontier& b, double junction_resource,
                                  double junction_profit, double budget);

/// Route made of any number of pieces, evaluated on the reduced graph over
/// the start/finish windows of each piece.
double eval_concat_general(std::span<const Piece> pieces, std::span<const SubsequenceData> data,
                           const ReducedInstance& red, Sparsity h);

/// prefix ⊕ s0 ⊕ suffix with s0 at most two customers. `prefix` must start
/// its direction and `suffix` must end its direction (either may be empty).
double eval_concat3(const Piece& prefix, std::span<const int> s0, const Piece& suffix,
                    std::span<const SubsequenceData> data, const ReducedInstance& red, Sparsity h);
double eval_concat3(const Piece& prefix, const Piece& s0, const Piece& suffix, std::span<const SubsequenceData> data,
                    const ReducedInstance& red, Sparsity h);

/// Customer sequence a list of pieces stands for.
std::vector<int> stitch(std::span<const Piece> pieces, std::span<const std::vector<int>> routes);

/// Rebuilds the caches of the listed routes only. Returns the rebuild count.
std::size_t invalidate_and_refresh(std::vector<SubsequenceData>& caches, std::span<const std::vector<int>> routes,
                                   std::span<const int> changed, const ReducedInstance& red, Sparsity h);

}  // namespace vrpp
