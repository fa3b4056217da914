#include "vrpp/model.hpp"

#include <cmath>
#include <unordered_set>

namespace vrpp {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::top:
      return "top";
    case ProblemKind::cptp:
      return "cptp";
    case ProblemKind::vrppfcc:
      return "vrppfcc";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "top" || text == "TOP") return ProblemKind::top;
  if (text == "cptp" || text == "CPTP") return ProblemKind::cptp;
  if (text == "vrppfcc" || text == "VRPPFCC") return ProblemKind::vrppfcc;
  throw InputError("unknown problem kind: " + std::string(text));
}

void Instance::validate() const {
  const auto size = static_cast<std::size_t>(n) + 1;
  if (n < 0) throw InputError("negative customer count");
  if (dist.size() != size) throw InputError("distance matrix has wrong size");
  if (demand.size() != size || profit.size() != size || outsource.size() != size)
    throw InputError("per-node vectors must have n+1 entries");
  if (fleet < 1) throw InputError("fleet size must be positive");
  if (!(limit > 0.0)) throw InputError("route limit must be positive");
  if (demand[0] != 0.0 || profit[0] != 0.0 || outsource[0] != 0.0)
    throw InputError("depot must carry zero demand, profit and outsourcing cost");
  for (std::size_t i = 0; i < size; ++i) {
    if (demand[i] < 0.0) throw InputError("negative demand at node " + std::to_string(i));
    if (outsource[i] < 0.0) throw InputError("negative outsourcing cost at node " + std::to_string(i));
    for (std::size_t j = 0; j < size; ++j)
      if (dist(i, j) < 0.0 || std::isnan(dist(i, j)))
        throw InputError("invalid distance on arc " + std::to_string(i) + "," + std::to_string(j));
  }
}

ReducedInstance reduce(const Instance& inst) {
  inst.validate();
  const auto size = static_cast<std::size_t>(inst.n) + 1;
  ReducedInstance red;
  red.name = inst.name;
  red.kind = inst.kind;
  red.n = inst.n;
  red.resource = Matrix(size);
  red.profit = Matrix(size);
  red.distance = inst.dist;
  red.budget = inst.limit;
  red.fleet = inst.fleet;
  red.asymmetric_depot = inst.asymmetric_depot;

  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double d = inst.dist(i, j);
      switch (inst.kind) {
        case ProblemKind::top:
          red.resource(i, j) = d;
          red.profit(i, j) = inst.profit[i];
          break;
        case ProblemKind::cptp:
          red.resource(i, j) = inst.demand[i] / 2.0 + inst.demand[j] / 2.0;
          red.profit(i, j) = inst.profit[i] - d;
          break;
        case ProblemKind::vrppfcc:
          red.resource(i, j) = inst.demand[i] / 2.0 + inst.demand[j] / 2.0;
          red.profit(i, j) = inst.outsource[i] - d;
          break;
      }
    }
  }
  if (inst.kind == ProblemKind::vrppfcc)
    for (std::size_t i = 1; i < size; ++i) red.offset += inst.outsource[i];
  return red;
}

std::optional<TriangleViolation> verify_triangle(const ReducedInstance& red) {
  const int size = red.n + 1;
  const int first_k = red.asymmetric_depot ? 1 : 0;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      if (i == j) continue;
      for (int k = first_k; k < size; ++k) {
        if (k == i || k == j) continue;
        if (red.r(i, j) > red.r(i, k) + red.r(k, j) + kResourceEps) return TriangleViolation{i, k, j};
      }
    }
  return std::nullopt;
}

double route_resource(const std::vector<int>& route, const ReducedInstance& red) {
  double total = 0.0;
  int prev = 0;
  for (int c : route) {
    total += red.r(prev, c);
    prev = c;
  }
  return total + red.r(prev, 0);
}

double route_profit(const std::vector<int>& route, const ReducedInstance& red) {
  double total = 0.0;
  int prev = 0;
  for (int c : route) {
    total += red.p(prev, c);
    prev = c;
  }
  return total + red.p(prev, 0);
}

double route_distance(const std::vector<int>& route, const ReducedInstance& red) {
  double total = 0.0;
  int prev = 0;
  for (int c : route) {
    total += red.d(prev, c);
    prev = c;
  }
  return total + red.d(prev, 0);
}

std::vector<std::string> check_feasible(const VrppSolution& sol, const ReducedInstance& red) {
  std::vector<std::string> issues;
  if (static_cast<int>(sol.routes.size()) > red.fleet)
    issues.push_back("uses " + std::to_string(sol.routes.size()) + " routes, fleet is " +
                     std::to_string(red.fleet));
  std::unordered_set<int> seen;
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    for (int c : sol.routes[k]) {
      if (c < 1 || c > red.n) throw InputError("customer index out of range: " + std::to_string(c));
      if (!seen.insert(c).second) issues.push_back("customer " + std::to_string(c) + " visited twice");
    }
    if (sol.routes[k].empty()) continue;
    const double used = route_resource(sol.routes[k], red);
    if (used > red.budget + kResourceEps)
      issues.push_back("route " + std::to_string(k + 1) + " consumes " + std::to_string(used) +
                       " > " + std::to_string(red.budget));
  }
  return issues;
}

double generic_objective(const VrppSolution& sol, const ReducedInstance& red) {
  double total = 0.0;
  for (const auto& route : sol.routes)
    if (!route.empty()) total += route_profit(route, red);
  return total;
}

double native_objective(const VrppSolution& sol, const ReducedInstance& red) {
  return generic_objective(sol, red) - red.offset;
}

}  // namespace vrpp
