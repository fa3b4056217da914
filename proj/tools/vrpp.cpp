#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vrpp/cli.hpp"

namespace {

struct Flags {
  std::vector<std::string> instances;
  std::string manifest;
  std::string problem = "top";
  std::string algo = "msils";
  std::string h = "3";
  int gamma = 20;
  double omega = 1e-4;
  int mu = 5, np = 3, ni = 10, nc = 3, shake = 2;
  double time_limit = 300.0;
  int runs = 1;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "table";
  std::vector<std::string> bks;
  bool no_timing = false, improving_only = false, serial = false, resume = false;
  std::optional<int> m;
  std::optional<double> q;
  std::vector<std::string> h_values;
  std::vector<double> omega_values;
};

void add_common(CLI::App* cmd, Flags& f, bool needs_instance) {
  auto* pos = cmd->add_option("instances", f.instances, "Instance file(s)");
  if (needs_instance) pos->required();
  cmd->add_option("--problem", f.problem, "top, cptp or vrppfcc");
  cmd->add_option("--algo", f.algo, "msls or msils");
  cmd->add_option("--H", f.h, "Sparsity parameter, or inf");
  cmd->add_option("--gamma", f.gamma, "Neighbour list size");
  cmd->add_option("--omega", f.omega, "Weight of the distance tie-breaker");
  cmd->add_option("--mu", f.mu, "MS-LS restarts");
  cmd->add_option("--np", f.np, "MS-ILS starts");
  cmd->add_option("--ni", f.ni, "MS-ILS non-improving iterations per start");
  cmd->add_option("--nc", f.nc, "MS-ILS children per iteration");
  cmd->add_option("--shake", f.shake, "Random relocations per shake");
  cmd->add_option("--time-limit", f.time_limit, "Wall-clock limit per run in seconds");
  cmd->add_option("--runs", f.runs, "Independent runs; run r uses seed + r");
  cmd->add_option("--seed", f.seed, "Base seed");
  cmd->add_option("--out", f.out, "Output file");
  cmd->add_option("--format", f.format, "table, csv or json-lines");
  cmd->add_option("--bks", f.bks, "Best-known-value file(s)");
  cmd->add_option("--m", f.m, "Fleet size override for CVRP-derived files");
  cmd->add_option("--Q", f.q, "Capacity override for CVRP-derived files");
  cmd->add_flag("--no-timing", f.no_timing, "Write zero times so output is byte-reproducible");
  cmd->add_flag("--improving-only", f.improving_only, "MS-ILS keeps a child only if it improves");
  cmd->add_flag("--serial", f.serial, "Disable OpenMP parallelism");
}

vrpp::RunConfig to_config(const std::string& command, const Flags& f) {
  vrpp::RunConfig cfg;
  cfg.command = command;
  cfg.instances = f.instances;
  cfg.manifest = f.manifest;
  cfg.problem = vrpp::parse_problem_kind(f.problem);
  cfg.algorithm = vrpp::parse_algorithm(f.algo);
  cfg.params.h = vrpp::Sparsity::parse(f.h);
  cfg.params.gamma = f.gamma;
  cfg.params.omega = f.omega;
  cfg.params.mu = f.mu;
  cfg.params.n_p = f.np;
  cfg.params.n_i = f.ni;
  cfg.params.n_c = f.nc;
  cfg.params.shake_strength = f.shake;
  cfg.params.time_limit = f.time_limit;
  cfg.params.seed = f.seed;
  cfg.params.improving_only = f.improving_only;
  cfg.params.parallel = !f.serial;
  cfg.runs = f.runs;
  cfg.out = f.out;
  cfg.format = vrpp::parse_format(f.format);
  cfg.bks_files = f.bks;
  cfg.timing = !f.no_timing;
  cfg.resume = f.resume;
  cfg.fleet = f.m;
  cfg.capacity = f.q;
  for (const auto& h : f.h_values) cfg.h_values.push_back(vrpp::Sparsity::parse(h));
  cfg.omega_values = f.omega_values;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heuristics for vehicle routing problems with profits"};
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "Solve one instance and print solution records");
  add_common(solve, f, true);

  auto* bench = app.add_subcommand("bench", "Run a benchmark set and report gaps to best-known values");
  add_common(bench, f, false);
  bench->add_option("--manifest", f.manifest, "Manifest listing instances");
  bench->add_flag("--resume", f.resume, "Skip runs already present in the json-lines --out file");

  auto* calibrate = app.add_subcommand("calibrate", "Grid over H and omega on a calibration set");
  add_common(calibrate, f, false);
  calibrate->add_option("--manifest", f.manifest, "Manifest listing instances");
  calibrate->add_option("--H-values", f.h_values, "H values to try")->delimiter(',');
  calibrate->add_option("--omega-values", f.omega_values, "omega values to try")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return vrpp::kExitInput;
  }

  vrpp::RunConfig cfg;
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    cfg = to_config(command, f);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return vrpp::kExitInput;
  }
  if (command == "solve") return vrpp::run_solve(cfg, std::cout, std::cerr);
  if (command == "bench") return vrpp::run_bench(cfg, std::cout, std::cerr);
  return vrpp::run_calibrate(cfg, std::cout, std::cerr);
}
