#pragma once

// Shared test data and brute-force oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vrpp/model.hpp"
#include "vrpp/select.hpp"

namespace fixtures {

using vrpp::ReducedInstance;

// The 10-customer example: symmetric resources on the listed arcs only,
// tail-node profits, R = 100.
inline ReducedInstance ten_customer_example() {
  ReducedInstance red;
  red.name = "ten-customer";
  red.kind = vrpp::ProblemKind::top;
  red.n = 10;
  red.budget = 100.0;
  red.fleet = 2;
  red.resource = vrpp::Matrix(11, vrpp::kInfiniteResource);
  red.profit = vrpp::Matrix(11, 0.0);
  red.distance = vrpp::Matrix(11, 0.0);
  auto set = [&](int i, int j, double r) {
    red.resource(i, j) = r;
    red.resource(j, i) = r;
  };
  const double depot[11] = {0, 15, 25, 15, 15, 20, 15, 20, 25, 25, 15};
  for (int i = 1; i <= 10; ++i) set(0, i, depot[i]);
  red.resource(0, 0) = 0.0;
  const double chain[11] = {0, 0, 30, 20, 20, 25, 10, 15, 15, 20, 35};
  for (int i = 2; i <= 10; ++i) set(i - 1, i, chain[i]);
  set(7, 9, 25);
  const double prize[11] = {0, 10, 15, 15, 10, 12, 15, 15, 12, 15, 15};
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) red.profit(i, j) = prize[i];
  return red;
}

// Integer-valued random instance whose resources obey the triangle
// inequality: Manhattan distances (TOP style) or half-demand sums (CPTP
// style). Every sum stays an exact double, so evaluators can be compared
// for exact equality.
inline ReducedInstance random_integer_instance(std::mt19937_64& rng, int n, bool demand_style, int fleet = 2) {
  ReducedInstance red;
  red.name = "random";
  red.kind = demand_style ? vrpp::ProblemKind::cptp : vrpp::ProblemKind::top;
  red.n = n;
  red.fleet = fleet;
  red.resource = vrpp::Matrix(static_cast<std::size_t>(n) + 1);
  red.profit = vrpp::Matrix(static_cast<std::size_t>(n) + 1);
  red.distance = vrpp::Matrix(static_cast<std::size_t>(n) + 1);
  std::uniform_int_distribution<int> coord(0, 20), demand(0, 12), prize(1, 20);
  std::vector<int> x(static_cast<std::size_t>(n) + 1), y(x.size()), q(x.size()), p(x.size());
  for (int i = 0; i <= n; ++i) {
    x[i] = coord(rng);
    y[i] = coord(rng);
    q[i] = i == 0 ? 0 : 2 * demand(rng);
    p[i] = i == 0 ? 0 : prize(rng);
  }
  double total = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double d = std::abs(x[i] - x[j]) + std::abs(y[i] - y[j]);
      red.distance(i, j) = d;
      if (demand_style) {
        red.resource(i, j) = q[i] / 2 + q[j] / 2;
        red.profit(i, j) = p[i] * 4 - d;
      } else {
        red.resource(i, j) = d;
        red.profit(i, j) = p[i];
      }
    }
  for (int i = 1; i <= n; ++i) total += demand_style ? q[i] : 2.0 * red.resource(0, i);
  // Tight enough that selection matters.
  std::uniform_real_distribution<double> frac(0.15, 0.5);
  red.budget = std::floor(total * frac(rng) / std::max(1, fleet)) + 1.0;
  if (!demand_style) red.budget = std::max(red.budget, 20.0);
  return red;
}

// Best order-preserving subset of `customers` by enumeration. Consecutive
// chosen positions (1-based route positions) must be at most H apart
// unless one of them is a depot.
inline double brute_force_select(const std::vector<int>& customers, const ReducedInstance& red, vrpp::Sparsity h) {
  const int L = static_cast<int>(customers.size());
  double best = red.p(0, 0);
  for (std::uint32_t mask = 1; mask < (1u << L); ++mask) {
    double r = 0.0, p = 0.0;
    int prev_node = 0, prev_pos = 0;
    bool ok = true;
    for (int k = 0; k < L && ok; ++k) {
      if (!(mask & (1u << k))) continue;
      const int pos = k + 1;
      if (prev_pos != 0 && !h.within(pos - prev_pos)) ok = false;
      r += red.r(prev_node, customers[k]);
      p += red.p(prev_node, customers[k]);
      prev_node = customers[k];
      prev_pos = pos;
    }
    if (!ok) continue;
    r += red.r(prev_node, 0);
    p += red.p(prev_node, 0);
    if (vrpp::fits(r, red.budget)) best = std::max(best, p);
  }
  return best;
}

inline std::vector<int> random_route(std::mt19937_64& rng, int n, int len) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(std::min(n, len)));
  return all;
}

}  // namespace fixtures
