#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "support/fixtures.hpp"
#include "vrpp/select.hpp"

using namespace vrpp;

TEST_CASE("sparsify_arcs") {
  CHECK(sparsify_arcs(5, Sparsity::unbounded()).size() == 10);

  auto h1 = sparsify_arcs(5, Sparsity(1));
  std::set<std::pair<int, int>> got(h1.begin(), h1.end());
  std::set<std::pair<int, int>> want{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 2}, {0, 3}, {0, 4}, {1, 4}, {2, 4}};
  CHECK(got == want);

  CHECK(arc_kept(2, 4, 8, Sparsity(3)));
  CHECK(arc_kept(2, 5, 8, Sparsity(3)));
  CHECK_FALSE(arc_kept(2, 6, 8, Sparsity(3)));
  CHECK(arc_kept(0, 6, 8, Sparsity(3)));
  CHECK(arc_kept(1, 7, 8, Sparsity(3)));

  CHECK_THROWS(Sparsity(0));
  CHECK_THROWS(sparsify_arcs(1, Sparsity(2)));
  CHECK(Sparsity::parse("inf").is_unbounded());
  CHECK(Sparsity::parse("4").value() == 4);
  CHECK_THROWS(Sparsity::parse("4x"));

  // O(len * H) arcs.
  for (int h = 1; h <= 4; ++h) CHECK(sparsify_arcs(40, Sparsity(h)).size() <= static_cast<std::size_t>(3 * 40 * h));
}

TEST_CASE("extend_label") {
  auto a = extend_label(Label{}, 15, 10);
  CHECK(a.resource == 15);
  CHECK(a.profit == 10);
  auto b = extend_label(Label{85, 52}, 15, 0);
  CHECK(b.resource == 100);
  CHECK(b.profit == 52);
  auto c = extend_label(Label{40, 20}, 5, -3, 4, 1);
  CHECK(c.resource == 45);
  CHECK(c.profit == 17);
  CHECK(c.pred_pos == 4);
  CHECK(c.pred_idx == 1);
}

TEST_CASE("dominance_insert") {
  LabelFrontier f(std::vector<Label>{{40, 35}});
  CHECK_FALSE(dominance_insert(f, Label{50, 30}, 0, 100));
  CHECK(f.size() == 1);

  LabelFrontier g(std::vector<Label>{{40, 35}, {60, 38}});
  CHECK(dominance_insert(g, Label{40, 40}, 0, 100));
  REQUIRE(g.size() == 1);
  CHECK(g[0].profit == 40);

  LabelFrontier h;
  CHECK_FALSE(dominance_insert(h, Label{90, 99}, 15, 100));
  CHECK(h.empty());

  // Equal labels keep the first.
  LabelFrontier e(std::vector<Label>{{10, 5, 1, 0}});
  CHECK_FALSE(dominance_insert(e, Label{10, 5, 2, 0}, 0, 100));
  CHECK(e[0].pred_pos == 1);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(0, 30);
  for (int rep = 0; rep < 300; ++rep) {
    LabelFrontier fr;
    std::vector<Label> all;
    for (int k = 0; k < 25; ++k) {
      Label s{static_cast<double>(v(rng)), static_cast<double>(v(rng))};
      dominance_insert(fr, s, 0, 100);
      all.push_back(s);
      REQUIRE(fr.is_valid());
    }
    // Each brute-force non-dominated label is represented.
    for (const Label& s : all) {
      bool dominated = false;
      for (const Label& t : all)
        if (t.resource <= s.resource && t.profit >= s.profit && (t.resource < s.resource || t.profit > s.profit))
          dominated = true;
      bool present = false;
      for (const Label& t : fr) present |= t.resource == s.resource && t.profit == s.profit;
      CHECK(present == !dominated);
    }
    auto copy = all;
    auto built = LabelFrontier::from_candidates(copy);
    REQUIRE(built.size() == fr.size());
    for (std::size_t i = 0; i < built.size(); ++i) {
      CHECK(built[i].resource == fr[i].resource);
      CHECK(built[i].profit == fr[i].profit);
    }
  }
}

TEST_CASE("select on the ten-customer example") {
  auto red = fixtures::ten_customer_example();
  auto a = select(RouteView::from_customers(std::vector<int>{1, 2, 3, 4, 5, 6}), red, Sparsity::unbounded());
  CHECK(a.profit == 52);
  CHECK(a.resource == 85);
  CHECK(a.chosen == std::vector<int>{3, 4, 5, 6});
  auto b = select(RouteView::from_customers(std::vector<int>{7, 8, 9, 10}), red, Sparsity::unbounded());
  CHECK(b.profit == 45);
  CHECK(b.resource == 95);
  CHECK(b.chosen == std::vector<int>{7, 9, 10});

  auto empty = select(RouteView::from_customers(std::vector<int>{}), red, Sparsity(3));
  CHECK(empty.profit == 0);
  CHECK(empty.chosen.empty());
}

TEST_CASE("select equals the subset oracle") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 300; ++rep) {
    const bool demand_style = rep % 2 == 1;
    auto red = fixtures::random_integer_instance(rng, 12, demand_style);
    auto route = fixtures::random_route(rng, 12, 1 + rep % 12);
    auto view = RouteView::from_customers(route);
    for (Sparsity h : {Sparsity(1), Sparsity(2), Sparsity(3), Sparsity::unbounded()}) {
      auto res = select(view, red, h);
      CHECK(res.profit == fixtures::brute_force_select(route, red, h));
      // The reported subsequence is feasible, ordered, and worth what was reported.
      VrppSolution sol{{res.chosen}, 0, 0};
      CHECK(check_feasible(sol, red).empty());
      if (!res.chosen.empty()) CHECK(route_profit(res.chosen, red) == res.profit);
      std::size_t k = 0;
      for (int c : route)
        if (k < res.chosen.size() && res.chosen[k] == c) ++k;
      CHECK(k == res.chosen.size());
    }
  }
}

TEST_CASE("select is monotone in H") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 100; ++rep) {
    auto red = fixtures::random_integer_instance(rng, 20, rep % 2 == 0);
    auto view = RouteView::from_customers(fixtures::random_route(rng, 20, 20));
    double prev = -1e18;
    for (int h = 1; h <= 6; ++h) {
      const double p = select(view, red, Sparsity(h)).profit;
      CHECK(p >= prev);
      prev = p;
    }
    CHECK(select(view, red, Sparsity::unbounded()).profit >= prev);
    CHECK(select(view, red, Sparsity(1)).profit >= red.p(0, 0));
  }
}

TEST_CASE("select label statistics") {
  std::mt19937_64 rng(1);
  auto red = fixtures::random_integer_instance(rng, 15, false);
  auto view = RouteView::from_customers(fixtures::random_route(rng, 15, 15));
  auto res = select(view, red, Sparsity(3));
  CHECK(res.stats.customer_nodes == 15);
  CHECK(res.stats.mean_frontier() <= static_cast<double>(res.stats.max_frontier));
}
