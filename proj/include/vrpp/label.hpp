#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vrpp/model.hpp"

namespace vrpp {

inline constexpr std::int32_t kNoPred = -1;

/// A (resource, profit) state of a partial path. The predecessor fields
/// point at the label this one was extended from: a position in the route
/// and an index in that position's frontier.
struct Label {
  double resource = 0.0;
  double profit = 0.0;
  std::int32_t pred_pos = kNoPred;
  std::int32_t pred_idx = kNoPred;
};

inline bool fits(double resource, double budget) { return resource <= budget + kResourceEps; }

Label extend_label(const Label& s, double arc_resource, double arc_profit, std::int32_t tail_pos = kNoPred,
                   std::int32_t tail_idx = kNoPred);

/// Pareto frontier sorted by strictly increasing resource and strictly
/// increasing profit.
class LabelFrontier {
 public:
  LabelFrontier() = default;
  explicit LabelFrontier(std::vector<Label> sorted) : labels_(std::move(sorted)) {}

  /// Single-label insertion with feasibility pruning. Rejects when
  /// s.resource + slack exceeds the budget, or when an existing label has
  /// resource <= s.resource and profit >= s.profit (equal labels keep the
  /// first). Otherwise removes every label s dominates.
  bool insert(const Label& s, double slack, double budget);

  /// Builds the frontier of an arbitrary candidate set. Candidates must
  /// already be feasible. Ties resolve as repeated insert() in input order.
  static LabelFrontier from_candidates(std::vector<Label>& candidates);

  std::span<const Label> labels() const { return labels_; }
  const Label& operator[](std::size_t i) const { return labels_[i]; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const Label& best() const { return labels_.back(); }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  bool is_valid() const;

 private:
  std::vector<Label> labels_;
};

bool dominance_insert(LabelFrontier& frontier, const Label& s, double slack, double budget);

}  // namespace vrpp
