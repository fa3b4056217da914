#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrpp/meta.hpp"
#include "vrpp/model.hpp"

namespace vrpp {

/// Chao TOP format: "n N", "m M", "tmax T" header lines, then N lines
/// "x y score". The first node is the origin depot, the last one the
/// destination depot.
Instance parse_top_chao(std::string_view text, std::string name = {});

struct CvrpVariant {
  std::optional<int> fleet;
  std::optional<double> capacity;
  // Per-customer profits (CPTP) or outsourcing costs (VRPPFCC), used when
  // the file itself has no such section.
  std::vector<double> values;
};

/// Fleet size and capacity encoded in names such as "p06-2-50".
std::optional<std::pair<int, double>> parse_cvrp_name(std::string_view name);

/// TSPLIB-style CVRP text with NODE_COORD_SECTION, DEMAND_SECTION and
/// optionally PROFIT_SECTION or OUTSOURCE_SECTION.
Instance parse_cvrp_derived(std::string_view text, ProblemKind kind, const CvrpVariant& variant, std::string name = {});

/// Reads one instance file; CVRP-derived fleet and capacity default to the
/// values encoded in the file name.
Instance load_instance(const std::string& path, ProblemKind kind, CvrpVariant variant = {});

std::string read_file(const std::string& path);

class BksTable {
 public:
  static BksTable parse(std::string_view text);
  static BksTable load(const std::string& path);

  std::optional<double> find(const std::string& name) const;
  void set(const std::string& name, double value);
  std::size_t size() const { return values_.size(); }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

/// Scale on which benchmark records are reported: collected profit for TOP
/// and CPTP, total cost for VRPPFCC.
double reported_value(ProblemKind kind, double native_objective);

/// True when larger reported values are better.
bool maximizing(ProblemKind kind);

struct Gap {
  double value = 0.0;
  bool flagged = false;  // BKS <= 0: absolute difference instead of percent
};

/// 100 (bks - z) / bks for maximization, 100 (z - bks) / bks for costs.
Gap gap(double z, double bks, bool maximize = true);

struct SolutionRecord {
  std::string instance;
  ProblemKind kind = ProblemKind::top;
  std::string algorithm;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> routes;
  double z_primary = 0.0;
  double native = 0.0;
  double wall_time = 0.0;
  double time_to_best = 0.0;
  double labels_mean = 0.0;
  std::size_t labels_max = 0;

  bool operator==(const SolutionRecord&) const = default;
};

std::vector<std::pair<std::string, std::string>> describe(const SearchParams& p);
SolutionRecord make_record(const std::string& instance, ProblemKind kind, const std::string& algorithm,
                           const SearchParams& params, const RunResult& run, bool timing = true);

std::string write_solution(const SolutionRecord& rec);

/// Parses and re-validates a record against the instance: throws
/// InputError on schema problems, infeasible routes, or a z_primary that
/// the routes do not reproduce.
SolutionRecord read_solution(std::string_view text, const ReducedInstance& red);

}  // namespace vrpp
