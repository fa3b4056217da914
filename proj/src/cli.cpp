#include "vrpp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace vrpp {

namespace {

using json = nlohmann::json;

// A best value counts as the BKS when it is within half a unit of the
// second decimal, the precision of the published tables.
constexpr double kBksTolerance = 5e-3;

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string algorithm_name(Algorithm a) { return a == Algorithm::msls ? "msls" : "msils"; }

struct Loaded {
  ManifestEntry entry;
  ReducedInstance red;
};

std::vector<ManifestEntry> entries_of(const RunConfig& cfg) {
  if (!cfg.manifest.empty()) {
    const auto base = std::filesystem::path(cfg.manifest).parent_path().string();
    return parse_manifest(read_file(cfg.manifest), base.empty() ? "." : base);
  }
  std::vector<ManifestEntry> out;
  for (const auto& path : cfg.instances) {
    ManifestEntry e;
    e.path = path;
    e.kind = cfg.problem;
    e.variant.fleet = cfg.fleet;
    e.variant.capacity = cfg.capacity;
    out.push_back(std::move(e));
  }
  return out;
}

Loaded load(const ManifestEntry& e) {
  Instance inst = load_instance(e.path, e.kind, e.variant);
  if (!e.name.empty()) inst.name = e.name;
  return Loaded{e, reduce(inst)};
}

BksTable merged_bks(const RunConfig& cfg) {
  BksTable all;
  // Later files override earlier ones.
  for (const auto& f : cfg.bks_files) {
    const auto table = BksTable::load(f);
    for (const auto& [name, v] : table.values()) all.set(name, v);
  }
  return all;
}

// Checks a finished run against from-scratch evaluation; returns a
// diagnostic when something disagrees.
std::string verify_run(const RunResult& run, const ReducedInstance& red, const SearchParams& params) {
  const SearchContext ctx{&red, params.h, params.omega};
  if (auto p = check_partition(run.best, red.n); !p.empty()) return "exhaustive solution: " + p;
  const auto issues = check_feasible(run.solution, red);
  if (!issues.empty()) return "selected solution infeasible: " + issues.front();
  const auto fresh = recompute(run.best, ctx);
  if (std::abs(fresh.z_primary - run.best.z_primary) > 1e-6)
    return "cached profit " + real(run.best.z_primary) + " differs from recomputed " + real(fresh.z_primary);
  if (std::abs(run.solution.objective - run.best.z_primary) > 1e-6)
    return "extracted solution profit differs from the search objective";
  return {};
}

struct RunOutcome {
  RunResult result;
  std::string failure;
};

std::vector<RunOutcome> execute_runs(const ReducedInstance& red, const RunConfig& cfg, const SearchParams& base,
                                     const std::vector<int>& run_ids) {
  std::vector<RunOutcome> out(run_ids.size());
  const bool outer = base.parallel && run_ids.size() > 1;
#pragma omp parallel for schedule(dynamic, 1) if (outer)
  for (std::size_t k = 0; k < run_ids.size(); ++k) {
    SearchParams p = base;
    p.seed = base.seed + static_cast<std::uint64_t>(run_ids[k]);
    if (outer) p.parallel = false;
    out[k].result = run_algorithm(red, cfg.algorithm, p);
    out[k].failure = verify_run(out[k].result, red, p);
  }
  return out;
}

json run_json(const std::string& instance, std::uint64_t seed, double value, const RunResult& r, bool timing) {
  return json{{"schema", "vrpp-bench-run/1"},
              {"instance", instance},
              {"seed", seed},
              {"value", value},
              {"z_primary", r.solution.objective},
              {"wall_time", timing ? r.wall_time : 0.0},
              {"time_to_best", timing ? r.time_to_best : 0.0},
              {"labels_mean", r.labels.mean}};
}

json row_json(const BenchRow& row) {
  json j{{"schema", "vrpp-bench-row/1"}, {"instance", row.instance}, {"problem", std::string(to_string(row.kind))},
         {"runs", row.runs},           {"best_value", row.best_value}, {"avg_value", row.avg_value},
         {"avg_gap", row.avg_gap},     {"best_gap", row.best_gap},     {"nb_bks", row.nb_bks},
         {"avg_time", row.avg_time},   {"avg_t_best", row.avg_t_best}, {"avg_labels", row.avg_labels},
         {"flagged", row.flagged}};
  j["bks"] = row.bks ? json(*row.bks) : json(nullptr);
  return j;
}

json aggregate_json(const BenchAggregate& a) {
  return json{{"schema", "vrpp-bench-aggregate/1"},
              {"instances", a.instances},
              {"avg_gap", a.avg_gap},
              {"best_gap", a.best_gap},
              {"nb_bks", a.nb_bks},
              {"avg_time", a.avg_time},
              {"avg_t_best", a.avg_t_best},
              {"avg_labels", a.avg_labels},
              {"mean_best_value", a.mean_best_value}};
}

struct PerRun {
  double value = 0.0;
  double wall_time = 0.0;
  double time_to_best = 0.0;
  double labels = 0.0;
};

BenchRow make_row(const Loaded& l, const std::optional<double>& bks, const std::vector<PerRun>& runs) {
  BenchRow row;
  row.instance = l.red.name;
  row.kind = l.red.kind;
  row.runs = static_cast<int>(runs.size());
  row.bks = bks;
  const bool maximize = maximizing(l.red.kind);
  double sum_gap = 0.0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& r = runs[k];
    if (k == 0 || (maximize ? r.value > row.best_value : r.value < row.best_value)) row.best_value = r.value;
    row.avg_value += r.value;
    row.avg_time += r.wall_time;
    row.avg_t_best += r.time_to_best;
    row.avg_labels += r.labels;
    if (bks) sum_gap += gap(r.value, *bks, maximize).value;
  }
  const double n = runs.empty() ? 1.0 : static_cast<double>(runs.size());
  row.avg_value /= n;
  row.avg_time /= n;
  row.avg_t_best /= n;
  row.avg_labels /= n;
  row.flagged = !bks || *bks <= 0.0;
  if (bks) {
    row.avg_gap = sum_gap / n;
    row.best_gap = gap(row.best_value, *bks, maximize).value;
    const double shortfall = maximize ? *bks - row.best_value : row.best_value - *bks;
    row.nb_bks = shortfall <= kBksTolerance ? 1 : 0;
  }
  return row;
}

std::map<std::pair<std::string, std::uint64_t>, PerRun> completed_runs(const std::string& path) {
  std::map<std::pair<std::string, std::uint64_t>, PerRun> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || j.value("schema", "") != "vrpp-bench-run/1") continue;
    done[{j["instance"].get<std::string>(), j["seed"].get<std::uint64_t>()}] =
        PerRun{j["value"].get<double>(), j["wall_time"].get<double>(), j["time_to_best"].get<double>(),
               j["labels_mean"].get<double>()};
  }
  return done;
}

// Runs every instance `cfg.runs` times. Run lines are passed to `emit` as
// each instance completes.
std::vector<BenchRow> bench_rows(const std::vector<Loaded>& loaded, const BksTable& bks, const RunConfig& cfg,
                                 const SearchParams& params, std::ostream* emit, std::ostream& err, int& status) {
  std::map<std::pair<std::string, std::uint64_t>, PerRun> done;
  if (cfg.resume && !cfg.out.empty() && std::filesystem::exists(cfg.out)) done = completed_runs(cfg.out);
  std::vector<BenchRow> rows;
  for (const auto& l : loaded) {
    std::vector<PerRun> runs(static_cast<std::size_t>(cfg.runs));
    std::vector<int> todo;
    for (int r = 0; r < cfg.runs; ++r) {
      auto it = done.find({l.red.name, params.seed + static_cast<std::uint64_t>(r)});
      if (it != done.end())
        runs[static_cast<std::size_t>(r)] = it->second;
      else
        todo.push_back(r);
    }
    auto outcomes = execute_runs(l.red, cfg, params, todo);
    for (std::size_t k = 0; k < todo.size(); ++k) {
      const auto& o = outcomes[k];
      if (!o.failure.empty()) {
        err << "invariant failure on " << l.red.name << " seed " << params.seed + todo[k] << ": " << o.failure
            << "\n";
        status = kExitInvariant;
      }
      PerRun pr{reported_value(l.red.kind, o.result.solution.native_objective), cfg.timing ? o.result.wall_time : 0.0,
                cfg.timing ? o.result.time_to_best : 0.0, o.result.labels.mean};
      runs[static_cast<std::size_t>(todo[k])] = pr;
      if (emit)
        *emit << run_json(l.red.name, params.seed + static_cast<std::uint64_t>(todo[k]), pr.value, o.result,
                          cfg.timing)
                     .dump()
              << "\n"
              << std::flush;
    }
    std::optional<double> value = l.entry.bks ? l.entry.bks : bks.find(l.red.name);
    rows.push_back(make_row(l, value, runs));
    if (emit) *emit << row_json(rows.back()).dump() << "\n" << std::flush;
    if (!value) err << "warning: no BKS for " << l.red.name << "; row left out of the aggregate\n";
  }
  return rows;
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& body) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : body) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << (c ? std::right : std::left) << cells[c];
    out << "\n";
  };
  line(header);
  for (const auto& r : body) line(r);
}

const std::vector<std::string> kBenchColumns{"instance", "problem",  "runs",     "bks",        "best_value",
                                             "avg_value", "avg_gap", "best_gap", "nb_bks",     "avg_time",
                                             "avg_t_best", "avg_labels", "flag"};

std::vector<std::string> row_cells(const BenchRow& r) {
  return {r.instance,           std::string(to_string(r.kind)),
          std::to_string(r.runs), r.bks ? real(*r.bks) : "",
          real(r.best_value),   real(r.avg_value),
          r.bks ? real(r.avg_gap) : "", r.bks ? real(r.best_gap) : "",
          std::to_string(r.nb_bks), real(r.avg_time),
          real(r.avg_t_best),   real(r.avg_labels),
          r.flagged ? (r.bks ? "bks<=0" : "no-bks") : ""};
}

std::vector<std::string> aggregate_cells(const BenchAggregate& a) {
  return {"aggregate",          "",
          std::to_string(a.instances), "",
          real(a.mean_best_value), "",
          real(a.avg_gap),      real(a.best_gap),
          std::to_string(a.nb_bks), real(a.avg_time),
          real(a.avg_t_best),   real(a.avg_labels),
          ""};
}

std::string join_csv(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c) s += ',';
    s += cells[c];
  }
  return s + "\n";
}

// Writes `text` to cfg.out when set, otherwise to `out`.
int deliver(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err, bool append = false) {
  if (cfg.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(cfg.out, append ? std::ios::app : std::ios::trunc);
  if (!f) {
    err << "cannot write " << cfg.out << "\n";
    return kExitInput;
  }
  f << text;
  return kExitOk;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace

Algorithm parse_algorithm(const std::string& text) {
  if (text == "msls") return Algorithm::msls;
  if (text == "msils") return Algorithm::msils;
  throw InputError("unknown algorithm: " + text);
}

ReportFormat parse_format(const std::string& text) {
  if (text == "table") return ReportFormat::table;
  if (text == "csv") return ReportFormat::csv;
  if (text == "json-lines") return ReportFormat::json_lines;
  throw InputError("unknown report format: " + text);
}

std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::string& base_dir) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 2) throw InputError("manifest line " + std::to_string(lineno) + ": need 'path problem'");
    ManifestEntry e;
    std::filesystem::path p(tok[0]);
    e.path = p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
    e.kind = parse_problem_kind(tok[1]);
    for (std::size_t k = 2; k < tok.size(); ++k) {
      const auto eq = tok[k].find('=');
      if (eq == std::string::npos) throw InputError("manifest line " + std::to_string(lineno) + ": bad field " + tok[k]);
      const std::string key = tok[k].substr(0, eq), val = tok[k].substr(eq + 1);
      if (key == "m")
        e.variant.fleet = std::stoi(val);
      else if (key == "Q")
        e.variant.capacity = std::stod(val);
      else if (key == "name")
        e.name = val;
      else if (key == "bks")
        e.bks = std::stod(val);
      else if (key == "values") {
        std::filesystem::path vp(val);
        std::istringstream vs(read_file(vp.is_absolute() ? val : (std::filesystem::path(base_dir) / vp).string()));
        for (double v; vs >> v;) e.variant.values.push_back(v);
      } else {
        throw InputError("manifest line " + std::to_string(lineno) + ": unknown field " + key);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

RunResult run_algorithm(const ReducedInstance& red, Algorithm algo, const SearchParams& params) {
  return algo == Algorithm::msls ? ms_ls(red, params) : ms_ils(red, params);
}

BenchAggregate aggregate(const std::vector<BenchRow>& rows) {
  BenchAggregate a;
  for (const auto& r : rows) a.mean_best_value += r.best_value;
  if (!rows.empty()) a.mean_best_value /= static_cast<double>(rows.size());
  for (const auto& r : rows) {
    if (r.flagged) continue;
    ++a.instances;
    a.avg_gap += r.avg_gap;
    a.best_gap += r.best_gap;
    a.nb_bks += r.nb_bks;
    a.avg_time += r.avg_time;
    a.avg_t_best += r.avg_t_best;
    a.avg_labels += r.avg_labels;
  }
  if (a.instances > 0) {
    const double n = a.instances;
    a.avg_gap /= n;
    a.best_gap /= n;
    a.avg_time /= n;
    a.avg_t_best /= n;
    a.avg_labels /= n;
  }
  return a;
}

std::string bench_csv(const std::vector<BenchRow>& rows, const BenchAggregate& agg) {
  std::string s = join_csv(kBenchColumns);
  for (const auto& r : rows) s += join_csv(row_cells(r));
  s += join_csv(aggregate_cells(agg));
  return s;
}

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.instances.size() != 1) throw InputError("solve takes exactly one instance file");
    if (cfg.runs < 1) throw InputError("--runs must be >= 1");
    cfg.params.validate();
    const auto entries = entries_of(cfg);
    const Loaded l = load(entries.front());
    const BksTable bks = merged_bks(cfg);

    std::vector<int> ids(static_cast<std::size_t>(cfg.runs));
    for (int r = 0; r < cfg.runs; ++r) ids[static_cast<std::size_t>(r)] = r;
    const auto outcomes = execute_runs(l.red, cfg, cfg.params, ids);
    for (std::size_t k = 0; k < outcomes.size(); ++k)
      if (!outcomes[k].failure.empty()) {
        err << "invariant failure (seed " << cfg.params.seed + k << "): " << outcomes[k].failure << "\n";
        return kExitInvariant;
      }

    std::string records;
    const bool maximize = maximizing(l.red.kind);
    std::size_t best = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      SearchParams p = cfg.params;
      p.seed = cfg.params.seed + k;
      records += write_solution(
          make_record(l.red.name, l.red.kind, algorithm_name(cfg.algorithm), p, outcomes[k].result, cfg.timing));
      const double v = reported_value(l.red.kind, outcomes[k].result.solution.native_objective);
      const double b = reported_value(l.red.kind, outcomes[best].result.solution.native_objective);
      if (maximize ? v > b + kProfitEps : v < b - kProfitEps) best = k;
      sum += v;
    }
    const auto& br = outcomes[best].result;
    const double best_value = reported_value(l.red.kind, br.solution.native_objective);
    const auto known = bks.find(l.red.name);

    std::ostringstream summary;
    switch (cfg.format) {
      case ReportFormat::table:
        summary << "instance " << l.red.name << "  best " << real(best_value) << "  avg "
                << real(sum / static_cast<double>(outcomes.size())) << "  seed " << cfg.params.seed + best;
        if (known) summary << "  bks " << real(*known) << "  gap " << fixed(gap(best_value, *known, maximize).value, 4) << "%";
        summary << "\n";
        break;
      case ReportFormat::csv:
        summary << "instance,problem,algorithm,runs,best_value,avg_value,best_seed,bks,best_gap\n"
                << l.red.name << "," << to_string(l.red.kind) << "," << algorithm_name(cfg.algorithm) << ","
                << outcomes.size() << "," << real(best_value) << "," << real(sum / static_cast<double>(outcomes.size()))
                << "," << cfg.params.seed + best << "," << (known ? real(*known) : "") << ","
                << (known ? real(gap(best_value, *known, maximize).value) : "") << "\n";
        break;
      case ReportFormat::json_lines: {
        json j{{"schema", "vrpp-solve-summary/1"},
               {"instance", l.red.name},
               {"problem", std::string(to_string(l.red.kind))},
               {"algorithm", algorithm_name(cfg.algorithm)},
               {"runs", outcomes.size()},
               {"best_value", best_value},
               {"avg_value", sum / static_cast<double>(outcomes.size())},
               {"best_seed", cfg.params.seed + best}};
        j["bks"] = known ? json(*known) : json(nullptr);
        summary << j.dump() << "\n";
        break;
      }
    }
    if (cfg.out.empty()) {
      out << records << summary.str();
      return kExitOk;
    }
    if (int rc = deliver(cfg, records, out, err); rc != kExitOk) return rc;
    out << summary.str();
    return kExitOk;
  });
}

int run_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.runs < 1) throw InputError("--runs must be >= 1");
    cfg.params.validate();
    const auto entries = entries_of(cfg);
    if (entries.empty()) throw InputError("bench needs --manifest or instance files");
    std::vector<Loaded> loaded;
    for (const auto& e : entries) loaded.push_back(load(e));
    const BksTable bks = merged_bks(cfg);

    int status = kExitOk;
    if (cfg.format == ReportFormat::json_lines) {
      std::ofstream file;
      std::ostream* sink = &out;
      if (!cfg.out.empty()) {
        file.open(cfg.out, cfg.resume ? std::ios::app : std::ios::trunc);
        if (!file) throw InputError("cannot write " + cfg.out);
        sink = &file;
      }
      auto rows = bench_rows(loaded, bks, cfg, cfg.params, sink, err, status);
      *sink << aggregate_json(aggregate(rows)).dump() << "\n";
      return status;
    }
    auto rows = bench_rows(loaded, bks, cfg, cfg.params, nullptr, err, status);
    const auto agg = aggregate(rows);
    std::ostringstream text;
    if (cfg.format == ReportFormat::csv) {
      text << bench_csv(rows, agg);
    } else {
      std::vector<std::vector<std::string>> body;
      for (const auto& r : rows) body.push_back(row_cells(r));
      body.push_back(aggregate_cells(agg));
      print_table(text, kBenchColumns, body);
    }
    if (int rc = deliver(cfg, text.str(), out, err); rc != kExitOk) return rc;
    return status;
  });
}

int run_calibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.runs < 1) throw InputError("--runs must be >= 1");
    cfg.params.validate();
    const auto entries = entries_of(cfg);
    if (entries.empty()) throw InputError("calibrate needs --manifest or instance files");
    std::vector<Loaded> loaded;
    for (const auto& e : entries) loaded.push_back(load(e));
    const BksTable bks = merged_bks(cfg);
    const std::vector<Sparsity> hs = cfg.h_values.empty() ? std::vector<Sparsity>{Sparsity(1), Sparsity(3)} : cfg.h_values;
    const std::vector<double> omegas = cfg.omega_values.empty() ? std::vector<double>{cfg.params.omega} : cfg.omega_values;

    const std::vector<std::string> header{"H",        "omega",  "instances", "mean_best_value", "avg_gap",
                                          "best_gap", "nb_bks", "avg_time",  "avg_t_best",      "avg_labels"};
    std::vector<std::vector<std::string>> body;
    std::ostringstream jl;
    int status = kExitOk;
    RunConfig quiet = cfg;
    quiet.resume = false;
    for (Sparsity h : hs)
      for (double omega : omegas) {
        SearchParams p = cfg.params;
        p.h = h;
        p.omega = omega;
        const auto agg = aggregate(bench_rows(loaded, bks, quiet, p, nullptr, err, status));
        body.push_back({h.to_string(), real(omega), std::to_string(agg.instances), real(agg.mean_best_value),
                        real(agg.avg_gap), real(agg.best_gap), std::to_string(agg.nb_bks), real(agg.avg_time),
                        real(agg.avg_t_best), real(agg.avg_labels)});
        auto j = aggregate_json(agg);
        j["schema"] = "vrpp-calibrate/1";
        j["H"] = h.to_string();
        j["omega"] = omega;
        jl << j.dump() << "\n";
      }
    std::ostringstream text;
    if (cfg.format == ReportFormat::csv) {
      text << join_csv(header);
      for (const auto& r : body) text << join_csv(r);
    } else if (cfg.format == ReportFormat::json_lines) {
      text << jl.str();
    } else {
      print_table(text, header, body);
    }
    if (int rc = deliver(cfg, text.str(), out, err); rc != kExitOk) return rc;
    return status;
  });
}

}  // namespace vrpp
