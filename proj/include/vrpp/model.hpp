#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vrpp {

// Feasibility and triangle comparisons use kResourceEps, profit
// comparisons kProfitEps.
inline constexpr double kResourceEps = 1e-6;
inline constexpr double kProfitEps = 1e-9;

// Stand-in for a forbidden arc. Any label crossing it fails every
// feasibility test.
inline constexpr double kInfiniteResource = 1e30;

enum class ProblemKind { top, cptp, vrppfcc };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major square matrix indexed by node (0 = depot).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t size, double fill = 0.0)
      : size_(size), data_(size * size, fill) {}

  std::size_t size() const { return size_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

/// Raw problem data. Node 0 is the depot; with distinct origin and
/// destination depots, row 0 holds distances from the origin and column 0
/// distances to the destination.
struct Instance {
  std::string name;
  ProblemKind kind = ProblemKind::top;
  int n = 0;  // customers
  Matrix dist;
  std::vector<double> demand;     // size n+1, demand[0] = 0
  std::vector<double> profit;     // size n+1, profit[0] = 0
  std::vector<double> outsource;  // size n+1, zero unless VRPPFCC
  int fleet = 1;
  double limit = 0.0;  // D for TOP, Q otherwise
  bool asymmetric_depot = false;
  // Coordinates when the instance came from a coordinate file; used only
  // for reporting.
  std::vector<double> x, y;

  void validate() const;
};

/// Two-resource VRP with profits: every arc has a resource consumption and
/// a profit, each route is bounded by one resource budget.
struct ReducedInstance {
  std::string name;
  ProblemKind kind = ProblemKind::top;
  int n = 0;
  Matrix resource;
  Matrix profit;
  Matrix distance;  // travel distance, drives the secondary objective
  double budget = 0.0;
  int fleet = 1;
  double offset = 0.0;  // sum of outsourcing costs (VRPPFCC)
  bool asymmetric_depot = false;

  double r(int i, int j) const { return resource(i, j); }
  double p(int i, int j) const { return profit(i, j); }
  double d(int i, int j) const { return distance(i, j); }
};

ReducedInstance reduce(const Instance& inst);

struct TriangleViolation {
  int i, k, j;  // r(i,j) > r(i,k) + r(k,j)
};

/// Returns nothing when every triple satisfies the inequality. The depot is
/// skipped as an intermediate node when origin and destination differ.
std::optional<TriangleViolation> verify_triangle(const ReducedInstance& red);

struct VrppSolution {
  std::vector<std::vector<int>> routes;  // selected customers only
  double objective = 0.0;
  double native_objective = 0.0;
};

double route_resource(const std::vector<int>& route, const ReducedInstance& red);
double route_profit(const std::vector<int>& route, const ReducedInstance& red);
double route_distance(const std::vector<int>& route, const ReducedInstance& red);

/// Human-readable list of violated constraints; empty iff feasible.
/// Throws InputError on an out-of-range customer index.
std::vector<std::string> check_feasible(const VrppSolution& sol, const ReducedInstance& red);

double generic_objective(const VrppSolution& sol, const ReducedInstance& red);
double native_objective(const VrppSolution& sol, const ReducedInstance& red);

}  // namespace vrpp
