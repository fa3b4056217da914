#include "vrpp/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace vrpp {

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

double to_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("bad number for ") + what + ": '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string stem(const std::string& path) {
  std::string s = std::filesystem::path(path).filename().string();
  for (const char* ext : {".txt", ".vrp", ".dat"})
    if (s.size() > std::strlen(ext) && s.ends_with(ext)) s.resize(s.size() - std::strlen(ext));
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

Instance parse_top_chao(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<int> nodes, fleet;
  std::optional<double> tmax;
  std::vector<std::array<double, 3>> rows;
  while (std::getline(in, line)) {
    auto tok = split(line);
    if (tok.empty()) continue;
    if (!nodes || !fleet || !tmax) {
      if (tok.size() != 2) throw InputError("malformed Chao header line: '" + trim(line) + "'");
      const std::string key = tok[0];
      if (key == "n")
        nodes = static_cast<int>(to_real(tok[1], "n"));
      else if (key == "m")
        fleet = static_cast<int>(to_real(tok[1], "m"));
      else if (key == "tmax")
        tmax = to_real(tok[1], "tmax");
      else
        throw InputError("unknown Chao header key '" + key + "'");
      continue;
    }
    if (tok.size() != 3) throw InputError("node line needs 'x y score': '" + trim(line) + "'");
    rows.push_back({to_real(tok[0], "x"), to_real(tok[1], "y"), to_real(tok[2], "score")});
  }
  if (!nodes || !fleet || !tmax) throw InputError("Chao header must give n, m and tmax");
  if (*nodes < 2) throw InputError("Chao instance needs origin and destination nodes");
  if (static_cast<int>(rows.size()) != *nodes)
    throw InputError("header announces " + std::to_string(*nodes) + " nodes, file has " +
                     std::to_string(rows.size()));

  const int n = *nodes - 2;
  Instance inst;
  inst.name = std::move(name);
  inst.kind = ProblemKind::top;
  inst.n = n;
  inst.fleet = *fleet;
  inst.limit = *tmax;
  inst.demand.assign(static_cast<std::size_t>(n) + 1, 0.0);
  inst.outsource.assign(static_cast<std::size_t>(n) + 1, 0.0);
  inst.profit.assign(static_cast<std::size_t>(n) + 1, 0.0);
  inst.x.resize(static_cast<std::size_t>(n) + 1);
  inst.y.resize(static_cast<std::size_t>(n) + 1);
  for (const auto& r : rows)
    if (r[2] < 0) throw InputError("negative score in Chao file");
  if (rows.front()[2] != 0 || rows.back()[2] != 0) throw InputError("depot nodes must have score 0");
  for (int i = 1; i <= n; ++i) {
    inst.x[i] = rows[i][0];
    inst.y[i] = rows[i][1];
    inst.profit[i] = rows[i][2];
  }
  inst.x[0] = rows.front()[0];
  inst.y[0] = rows.front()[1];
  const auto& origin = rows.front();
  const auto& dest = rows.back();
  inst.asymmetric_depot = origin[0] != dest[0] || origin[1] != dest[1];

  inst.dist = Matrix(static_cast<std::size_t>(n) + 1);
  auto euclid = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) inst.dist(i, j) = euclid(rows[i], rows[j]);
    inst.dist(0, i) = euclid(origin, rows[i]);
    inst.dist(i, 0) = euclid(rows[i], dest);
  }
  inst.dist(0, 0) = euclid(origin, dest);
  inst.validate();
  return inst;
}

std::optional<std::pair<int, double>> parse_cvrp_name(std::string_view name) {
  static const std::regex pattern(R"(^.*?-(\d+)-(\d+(?:\.\d+)?)$)");
  std::cmatch m;
  const std::string s(name);
  if (!std::regex_match(s.c_str(), m, pattern)) return std::nullopt;
  return std::pair<int, double>{std::stoi(m[1].str()), std::stod(m[2].str())};
}

Instance parse_cvrp_derived(std::string_view text, ProblemKind kind, const CvrpVariant& variant, std::string name) {
  if (kind == ProblemKind::top) throw InputError("CVRP-derived files describe CPTP or VRPPFCC instances");
  std::istringstream in{std::string(text)};
  std::string line, section;
  std::optional<int> dimension, vehicles;
  std::optional<double> capacity;
  std::map<int, std::pair<double, double>> coords;
  std::map<int, double> demand, values;
  std::vector<int> depots;
  bool value_section = false;

  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string ut = upper(t);
    if (ut == "EOF") break;
    if (ut.ends_with("_SECTION")) {
      section = ut;
      if (section == "PROFIT_SECTION" || section == "OUTSOURCE_SECTION") {
        const bool matches = (section == "PROFIT_SECTION") == (kind == ProblemKind::cptp);
        if (!matches)
          throw InputError(section + " does not match problem " + std::string(to_string(kind)));
        value_section = true;
      }
      continue;
    }
    const auto colon = t.find(':');
    if (colon != std::string::npos && !std::isdigit(static_cast<unsigned char>(t[0])) && t[0] != '-') {
      const std::string key = upper(trim(t.substr(0, colon)));
      const std::string val = trim(t.substr(colon + 1));
      if (key == "NAME" && name.empty()) name = val;
      if (key == "DIMENSION") dimension = static_cast<int>(to_real(val, "DIMENSION"));
      if (key == "CAPACITY") capacity = to_real(val, "CAPACITY");
      if (key == "VEHICLES") vehicles = static_cast<int>(to_real(val, "VEHICLES"));
      section.clear();
      continue;
    }
    const auto tok = split(t);
    if (section == "NODE_COORD_SECTION") {
      if (tok.size() != 3) throw InputError("coordinate line needs 'id x y': '" + t + "'");
      coords[static_cast<int>(to_real(tok[0], "id"))] = {to_real(tok[1], "x"), to_real(tok[2], "y")};
    } else if (section == "DEMAND_SECTION") {
      if (tok.size() != 2) throw InputError("demand line needs 'id q': '" + t + "'");
      demand[static_cast<int>(to_real(tok[0], "id"))] = to_real(tok[1], "demand");
    } else if (section == "PROFIT_SECTION" || section == "OUTSOURCE_SECTION") {
      if (tok.size() != 2) throw InputError("value line needs 'id value': '" + t + "'");
      values[static_cast<int>(to_real(tok[0], "id"))] = to_real(tok[1], "value");
    } else if (section == "DEPOT_SECTION") {
      for (const auto& s : tok) {
        const int id = static_cast<int>(to_real(s, "depot"));
        if (id >= 0) depots.push_back(id);
      }
    } else {
      throw InputError("unexpected line outside any section: '" + t + "'");
    }
  }

  if (coords.empty()) throw InputError("missing NODE_COORD_SECTION");
  if (demand.empty()) throw InputError("missing DEMAND_SECTION");
  if (dimension && *dimension != static_cast<int>(coords.size()))
    throw InputError("DIMENSION does not match the coordinate count");
  if (depots.size() > 1) throw InputError("a single depot is supported");
  const int depot = depots.empty() ? coords.begin()->first : depots.front();
  if (!coords.count(depot)) throw InputError("depot has no coordinates");

  std::vector<int> order{depot};
  for (const auto& [id, xy] : coords)
    if (id != depot) order.push_back(id);
  const int n = static_cast<int>(order.size()) - 1;

  auto from_name = parse_cvrp_name(name);
  Instance inst;
  inst.name = name;
  inst.kind = kind;
  inst.n = n;
  if (variant.fleet)
    inst.fleet = *variant.fleet;
  else if (vehicles)
    inst.fleet = *vehicles;
  else if (from_name)
    inst.fleet = from_name->first;
  else
    throw InputError("fleet size m absent (give it explicitly or through the instance name)");
  if (variant.capacity)
    inst.limit = *variant.capacity;
  else if (from_name)
    inst.limit = from_name->second;
  else if (capacity)
    inst.limit = *capacity;
  else
    throw InputError("capacity Q absent");

  const auto size = static_cast<std::size_t>(n) + 1;
  inst.demand.assign(size, 0.0);
  inst.profit.assign(size, 0.0);
  inst.outsource.assign(size, 0.0);
  inst.x.resize(size);
  inst.y.resize(size);
  if (!value_section && variant.values.size() != static_cast<std::size_t>(n))
    throw InputError(std::string(kind == ProblemKind::cptp ? "profit" : "outsourcing cost") +
                     " data missing: no section in the file and no per-customer vector given");
  auto& target = kind == ProblemKind::cptp ? inst.profit : inst.outsource;
  for (int k = 0; k <= n; ++k) {
    const int id = order[static_cast<std::size_t>(k)];
    inst.x[k] = coords[id].first;
    inst.y[k] = coords[id].second;
    if (k == 0) continue;
    if (!demand.count(id)) throw InputError("node " + std::to_string(id) + " has no demand");
    inst.demand[k] = demand[id];
    if (value_section) {
      if (!values.count(id)) throw InputError("node " + std::to_string(id) + " has no profit/outsourcing value");
      target[k] = values[id];
    } else {
      target[k] = variant.values[static_cast<std::size_t>(k) - 1];
    }
  }
  if (demand.count(depot) && demand[depot] != 0.0) throw InputError("depot demand must be zero");
  inst.dist = Matrix(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      inst.dist(i, j) = std::hypot(inst.x[i] - inst.x[j], inst.y[i] - inst.y[j]);
  inst.validate();
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Instance load_instance(const std::string& path, ProblemKind kind, CvrpVariant variant) {
  const std::string text = read_file(path);
  const std::string name = stem(path);
  if (kind == ProblemKind::top) return parse_top_chao(text, name);
  return parse_cvrp_derived(text, kind, variant, name);
}

// ---------------------------------------------------------------------------

BksTable BksTable::parse(std::string_view text) {
  BksTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto tok = split(t);
    if (tok.size() != 2) throw InputError("BKS line needs 'name value': '" + t + "'");
    const double v = to_real(tok[1], "BKS");
    if (!std::isfinite(v)) throw InputError("non-finite BKS for " + tok[0]);
    if (table.values_.count(tok[0])) throw InputError("duplicate BKS entry " + tok[0]);
    table.values_[tok[0]] = v;
  }
  return table;
}

BksTable BksTable::load(const std::string& path) { return parse(read_file(path)); }

std::optional<double> BksTable::find(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void BksTable::set(const std::string& name, double value) { values_[name] = value; }

double reported_value(ProblemKind kind, double native) { return kind == ProblemKind::vrppfcc ? -native : native; }

bool maximizing(ProblemKind kind) { return kind != ProblemKind::vrppfcc; }

Gap gap(double z, double bks, bool maximize) {
  if (bks <= 0.0) return Gap{std::abs(bks - z), true};
  return Gap{maximize ? 100.0 * (bks - z) / bks : 100.0 * (z - bks) / bks, false};
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> describe(const SearchParams& p) {
  return {{"H", p.h.to_string()},
          {"omega", format_real(p.omega)},
          {"gamma", std::to_string(p.gamma)},
          {"mu", std::to_string(p.mu)},
          {"np", std::to_string(p.n_p)},
          {"ni", std::to_string(p.n_i)},
          {"nc", std::to_string(p.n_c)},
          {"shake", std::to_string(p.shake_strength)},
          {"time_limit", format_real(p.time_limit)},
          {"improving_only", p.improving_only ? "1" : "0"}};
}

SolutionRecord make_record(const std::string& instance, ProblemKind kind, const std::string& algorithm,
                           const SearchParams& params, const RunResult& run, bool timing) {
  SolutionRecord rec;
  rec.instance = instance;
  rec.kind = kind;
  rec.algorithm = algorithm;
  rec.params = describe(params);
  rec.seed = params.seed;
  rec.routes = run.solution.routes;
  rec.z_primary = run.solution.objective;
  rec.native = run.solution.native_objective;
  rec.wall_time = timing ? run.wall_time : 0.0;
  rec.time_to_best = timing ? run.time_to_best : 0.0;
  rec.labels_mean = run.labels.mean;
  rec.labels_max = run.labels.max;
  return rec;
}

std::string write_solution(const SolutionRecord& rec) {
  std::ostringstream out;
  out << "vrpp-solution 1\n";
  out << "instance " << rec.instance << "\n";
  out << "problem " << to_string(rec.kind) << "\n";
  out << "algorithm " << rec.algorithm << "\n";
  for (const auto& [k, v] : rec.params) out << "param " << k << " " << v << "\n";
  out << "seed " << rec.seed << "\n";
  out << "z_primary " << format_real(rec.z_primary) << "\n";
  out << "native_objective " << format_real(rec.native) << "\n";
  out << "wall_time " << format_real(rec.wall_time) << "\n";
  out << "time_to_best " << format_real(rec.time_to_best) << "\n";
  out << "labels_mean " << format_real(rec.labels_mean) << "\n";
  out << "labels_max " << rec.labels_max << "\n";
  out << "routes " << rec.routes.size() << "\n";
  for (const auto& r : rec.routes) {
    out << "route";
    for (int c : r) out << " " << c;
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

SolutionRecord read_solution(std::string_view text, const ReducedInstance& red) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || trim(line) != "vrpp-solution 1")
    throw InputError("not a version-1 solution record");
  SolutionRecord rec;
  std::optional<std::size_t> route_count;
  bool ended = false;
  std::map<std::string, bool> seen;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    auto tok = split(t);
    const std::string key = tok[0];
    if (ended) throw InputError("content after 'end'");
    if (key == "end") {
      ended = true;
      continue;
    }
    if (key == "route") {
      std::vector<int> r;
      for (std::size_t k = 1; k < tok.size(); ++k) r.push_back(static_cast<int>(to_real(tok[k], "customer")));
      rec.routes.push_back(std::move(r));
      continue;
    }
    if (key == "param") {
      if (tok.size() != 3) throw InputError("param line needs 'param key value'");
      rec.params.emplace_back(tok[1], tok[2]);
      continue;
    }
    if (tok.size() != 2) throw InputError("field '" + key + "' needs exactly one value");
    if (seen[key]) throw InputError("duplicate field '" + key + "'");
    seen[key] = true;
    const std::string& v = tok[1];
    if (key == "instance") rec.instance = v;
    else if (key == "problem") rec.kind = parse_problem_kind(v);
    else if (key == "algorithm") rec.algorithm = v;
    else if (key == "seed") rec.seed = std::stoull(v);
    else if (key == "z_primary") rec.z_primary = to_real(v, key.c_str());
    else if (key == "native_objective") rec.native = to_real(v, key.c_str());
    else if (key == "wall_time") rec.wall_time = to_real(v, key.c_str());
    else if (key == "time_to_best") rec.time_to_best = to_real(v, key.c_str());
    else if (key == "labels_mean") rec.labels_mean = to_real(v, key.c_str());
    else if (key == "labels_max") rec.labels_max = static_cast<std::size_t>(std::stoull(v));
    else if (key == "routes") route_count = static_cast<std::size_t>(std::stoull(v));
    else throw InputError("unknown field '" + key + "'");
  }
  for (const char* required : {"instance", "problem", "algorithm", "seed", "z_primary", "native_objective", "routes"})
    if (!seen[required]) throw InputError(std::string("missing field '") + required + "'");
  if (!ended) throw InputError("record is truncated (no 'end')");
  if (*route_count != rec.routes.size()) throw InputError("route count does not match the route lines");
  if (rec.kind != red.kind) throw InputError("record problem kind does not match the instance");

  VrppSolution sol{rec.routes, 0.0, 0.0};
  const auto issues = check_feasible(sol, red);
  if (!issues.empty()) throw InputError("infeasible record: " + issues.front());
  const double z = generic_objective(sol, red);
  if (std::abs(z - rec.z_primary) > 1e-6)
    throw InputError("z_primary " + format_real(rec.z_primary) + " does not match the routes (" + format_real(z) +
                     ")");
  if (std::abs(native_objective(sol, red) - rec.native) > 1e-6)
    throw InputError("native objective does not match the routes");
  return rec;
}

}  // namespace vrpp
