#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "vrpp/model.hpp"

using namespace vrpp;

namespace {

Instance small_instance(ProblemKind kind, int n, std::mt19937_64& rng) {
  Instance inst;
  inst.name = "small";
  inst.kind = kind;
  inst.n = n;
  inst.fleet = 2;
  inst.limit = 60.0;
  std::uniform_real_distribution<double> coord(0.0, 30.0), val(0.0, 10.0);
  std::vector<double> x(n + 1), y(n + 1);
  inst.demand.assign(n + 1, 0.0);
  inst.profit.assign(n + 1, 0.0);
  inst.outsource.assign(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    x[i] = coord(rng);
    y[i] = coord(rng);
    if (i > 0) {
      inst.demand[i] = val(rng);
      inst.profit[i] = std::round(val(rng) * 3);
      if (kind == ProblemKind::vrppfcc) inst.outsource[i] = val(rng) * 4;
    }
  }
  inst.dist = Matrix(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) inst.dist(i, j) = std::hypot(x[i] - x[j], y[i] - y[j]);
  return inst;
}

}  // namespace

TEST_CASE("reduce: tail-node conventions of the three problems") {
  Instance inst;
  inst.n = 2;
  inst.dist = Matrix(3);
  inst.dist(0, 1) = inst.dist(1, 0) = 15;
  inst.dist(1, 2) = inst.dist(2, 1) = 5;
  inst.dist(0, 2) = inst.dist(2, 0) = 12;
  inst.demand = {0, 4, 6};
  inst.profit = {0, 12, 3};
  inst.outsource = {0, 0, 0};
  inst.limit = 100;

  inst.kind = ProblemKind::top;
  auto top = reduce(inst);
  CHECK(top.r(0, 1) == 15);
  CHECK(top.p(0, 1) == 0);
  CHECK(top.p(1, 2) == 12);

  inst.kind = ProblemKind::cptp;
  auto cptp = reduce(inst);
  CHECK(cptp.r(1, 2) == 5);
  CHECK(cptp.p(1, 2) == 7);
  CHECK(cptp.offset == 0);

  inst.kind = ProblemKind::vrppfcc;
  auto fcc = reduce(inst);
  CHECK(fcc.p(1, 2) == -5);
  CHECK(fcc.p(0, 2) == -12);
  CHECK(fcc.offset == 0);
}

TEST_CASE("reduce: bad inputs") {
  Instance inst;
  inst.n = 1;
  inst.dist = Matrix(2);
  inst.demand = {0, -1};
  inst.profit = {0, 1};
  inst.outsource = {0, 0};
  inst.limit = 1;
  CHECK_THROWS_AS(reduce(inst), InputError);
  CHECK_THROWS_AS(parse_problem_kind("tsp"), InputError);
}

TEST_CASE("verify_triangle") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 100; ++rep)
    for (auto kind : {ProblemKind::top, ProblemKind::cptp, ProblemKind::vrppfcc}) {
      auto red = reduce(small_instance(kind, 8, rng));
      CHECK_FALSE(verify_triangle(red).has_value());
    }

  ReducedInstance red;
  red.n = 2;
  red.resource = Matrix(3);
  red.resource(0, 1) = 10;
  red.resource(0, 2) = 1;
  red.resource(2, 1) = 2;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && red.resource(i, j) == 0) red.resource(i, j) = 5;
  auto v = verify_triangle(red);
  REQUIRE(v.has_value());
  CHECK(v->i == 0);
  CHECK(v->k == 2);
  CHECK(v->j == 1);
}

TEST_CASE("check_feasible on the ten-customer example") {
  auto red = fixtures::ten_customer_example();
  CHECK(route_resource({3, 4, 5, 6}, red) == 85);
  CHECK(route_resource({1, 2, 3, 4}, red) == 100);
  VrppSolution ok{{{3, 4, 5, 6}}, 0, 0};
  CHECK(check_feasible(ok, red).empty());
  VrppSolution boundary{{{1, 2, 3, 4}}, 0, 0};
  CHECK(check_feasible(boundary, red).empty());
  VrppSolution over{{{1, 2, 3, 4, 5}}, 0, 0};
  // 100 - r40 + r45 + r50 = 100 - 15 + 25 + 20.
  CHECK(route_resource({1, 2, 3, 4, 5}, red) == 130);
  CHECK_FALSE(check_feasible(over, red).empty());
  VrppSolution dup{{{1}, {1}}, 0, 0};
  CHECK_FALSE(check_feasible(dup, red).empty());
  VrppSolution fleet{{{1}, {3}, {6}}, 0, 0};
  CHECK_FALSE(check_feasible(fleet, red).empty());
  VrppSolution bad{{{11}}, 0, 0};
  CHECK_THROWS_AS(check_feasible(bad, red), InputError);
}

TEST_CASE("native objective") {
  auto red = fixtures::ten_customer_example();
  CHECK(native_objective({{{3, 4, 5, 6}, {7, 9, 10}}, 0, 0}, red) == 97);
  CHECK(native_objective({{{1, 2, 3, 4}, {6, 7, 8, 9}}, 0, 0}, red) == 107);

  std::mt19937_64 rng(11);
  auto fcc_inst = small_instance(ProblemKind::vrppfcc, 6, rng);
  auto fcc = reduce(fcc_inst);
  double sum_o = 0;
  for (double o : fcc_inst.outsource) sum_o += o;
  CHECK(native_objective({{}, 0, 0}, fcc) == doctest::Approx(-sum_o));

  // TOP telescopes to the sum of node prizes; CPTP equals prizes minus
  // travelled distance.
  for (int rep = 0; rep < 100; ++rep) {
    auto top_inst = small_instance(ProblemKind::top, 9, rng);
    auto cptp_inst = top_inst;
    cptp_inst.kind = ProblemKind::cptp;
    auto top = reduce(top_inst);
    auto cptp = reduce(cptp_inst);
    auto route = fixtures::random_route(rng, 9, 1 + rep % 9);
    VrppSolution sol{{route}, 0, 0};
    double prizes = 0, travel = 0;
    int prev = 0;
    for (int c : route) {
      prizes += top_inst.profit[c];
      travel += top_inst.dist(prev, c);
      prev = c;
    }
    travel += top_inst.dist(prev, 0);
    CHECK(native_objective(sol, top) == doctest::Approx(prizes).epsilon(1e-12));
    CHECK(std::abs(native_objective(sol, cptp) - (prizes - travel)) < 1e-9);
  }
}

TEST_CASE("check_feasible agrees with an independent summation") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    auto red = fixtures::random_integer_instance(rng, 8, rep % 2 == 0);
    auto route = fixtures::random_route(rng, 8, 1 + rep % 8);
    double sum = 0;
    int prev = 0;
    for (int c : route) {
      sum += red.resource(prev, c);
      prev = c;
    }
    sum += red.resource(prev, 0);
    CHECK(check_feasible({{route}, 0, 0}, red).empty() == (sum <= red.budget + kResourceEps));
  }
}
