#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vrpp/io.hpp"
#include "vrpp/meta.hpp"

namespace vrpp {

enum class Algorithm { msls, msils };
enum class ReportFormat { table, csv, json_lines };

Algorithm parse_algorithm(const std::string& text);
ReportFormat parse_format(const std::string& text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

struct RunConfig {
  std::string command = "solve";
  std::vector<std::string> instances;
  std::string manifest;
  ProblemKind problem = ProblemKind::top;
  Algorithm algorithm = Algorithm::msils;
  SearchParams params;
  int runs = 1;
  std::string out;
  ReportFormat format = ReportFormat::table;
  std::vector<std::string> bks_files;
  bool timing = true;
  bool resume = false;
  std::optional<int> fleet;        // CVRP-derived overrides for solve
  std::optional<double> capacity;
  std::vector<Sparsity> h_values;  // calibrate grid
  std::vector<double> omega_values;
};

/// One manifest line: "path problem [m=M] [Q=Q] [name=N] [bks=V] [values=FILE]".
/// Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::string path;
  std::string name;
  ProblemKind kind = ProblemKind::top;
  CvrpVariant variant;
  std::optional<double> bks;
};

std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::string& base_dir = ".");

RunResult run_algorithm(const ReducedInstance& red, Algorithm algo, const SearchParams& params);

/// Per-instance benchmark row; values are on the reported scale (profit,
/// or cost for VRPPFCC).
struct BenchRow {
  std::string instance;
  ProblemKind kind = ProblemKind::top;
  int runs = 0;
  std::optional<double> bks;
  double best_value = 0.0;
  double avg_value = 0.0;
  double avg_gap = 0.0;
  double best_gap = 0.0;
  int nb_bks = 0;
  double avg_time = 0.0;
  double avg_t_best = 0.0;
  double avg_labels = 0.0;
  bool flagged = false;  // no BKS, or a non-positive one; left out of the aggregate
};

struct BenchAggregate {
  int instances = 0;
  double avg_gap = 0.0;
  double best_gap = 0.0;
  int nb_bks = 0;
  double avg_time = 0.0;
  double avg_t_best = 0.0;
  double avg_labels = 0.0;
  double mean_best_value = 0.0;  // over all rows, flagged included
};

BenchAggregate aggregate(const std::vector<BenchRow>& rows);

std::string bench_csv(const std::vector<BenchRow>& rows, const BenchAggregate& agg);

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_calibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace vrpp
