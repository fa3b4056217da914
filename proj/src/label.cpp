#include "vrpp/label.hpp"

#include <algorithm>

namespace vrpp {

Label extend_label(const Label& s, double arc_resource, double arc_profit, std::int32_t tail_pos,
                   std::int32_t tail_idx) {
  return Label{s.resource + arc_resource, s.profit + arc_profit, tail_pos, tail_idx};
}

bool LabelFrontier::insert(const Label& s, double slack, double budget) {
  if (!fits(s.resource + slack, budget)) return false;
  // First label with resource strictly greater than s.
  auto upper = std::upper_bound(labels_.begin(), labels_.end(), s.resource,
                                [](double r, const Label& l) { return r < l.resource; });
  if (upper != labels_.begin() && std::prev(upper)->profit >= s.profit) return false;
  // Labels with resource >= s.resource and profit <= s.profit form a
  // contiguous run starting at the first label with resource >= s.
  auto lower = std::lower_bound(labels_.begin(), labels_.end(), s.resource,
                                [](const Label& l, double r) { return l.resource < r; });
  auto last = lower;
  while (last != labels_.end() && last->profit <= s.profit) ++last;
  lower = labels_.erase(lower, last);
  labels_.insert(lower, s);
  return true;
}

namespace {

bool label_before(const Label& a, const Label& b) {
  if (a.resource != b.resource) return a.resource < b.resource;
  return a.profit > b.profit;
}

// Merges a resource-sorted run into a frontier, dropping dominated labels.
// On exact ties the frontier's label wins, which matches inserting the
// candidates one by one in input order.
void merge_run(const std::vector<Label>& front, const Label* first, const Label* last, std::vector<Label>& out) {
  out.clear();
  auto keep = [&](const Label& l) {
    if (out.empty() || l.profit > out.back().profit) out.push_back(l);
  };
  std::size_t i = 0;
  while (i < front.size() && first != last) {
    if (label_before(*first, front[i]))
      keep(*first++);
    else
      keep(front[i++]);
  }
  for (; i < front.size(); ++i) keep(front[i]);
  for (; first != last; ++first) keep(*first);
}

}  // namespace

LabelFrontier LabelFrontier::from_candidates(std::vector<Label>& candidates) {
  // Candidate sets are concatenations of already sorted frontiers.
  thread_local std::vector<Label> front, next;
  front.clear();
  std::size_t begin = 0;
  const std::size_t n = candidates.size();
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && !label_before(candidates[end], candidates[end - 1])) ++end;
    merge_run(front, candidates.data() + begin, candidates.data() + end, next);
    front.swap(next);
    begin = end;
  }
  return LabelFrontier(std::vector<Label>(front.begin(), front.end()));
}

bool LabelFrontier::is_valid() const {
  for (std::size_t i = 1; i < labels_.size(); ++i)
    if (!(labels_[i].resource > labels_[i - 1].resource) || !(labels_[i].profit > labels_[i - 1].profit))
      return false;
  return true;
}

bool dominance_insert(LabelFrontier& frontier, const Label& s, double slack, double budget) {
  return frontier.insert(s, slack, budget);
}

}  // namespace vrpp
