#include "wdl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wdl/errors.hpp"

namespace wdl {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_number(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

// JSON object view that remembers which keys were read, so leftovers can be
// reported as unknown.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) throw ConfigError(path_display(), "expected an object");
  }

  bool has(const std::string& key) const { return value_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    const auto it = value_.find(key);
    return it == value_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = get(key);
    if (!v) throw ConfigError(child(key), "required key is missing");
    return *v;
  }

  Node object(const std::string& key) { return Node(require(key), child(key)); }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void reject_unknown() const {
    for (const auto& [key, _] : value_.items())
      if (!seen_.count(key)) throw ConfigError(child(key), "unknown key");
  }

  std::string path_display() const { return path_.empty() ? "<root>" : path_; }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

double number_or(Node& node, const std::string& key, double fallback) {
  const json* v = node.get(key);
  return v ? as_number(*v, node.child(key)) : fallback;
}

std::int64_t integer_or(Node& node, const std::string& key, std::int64_t fallback) {
  const json* v = node.get(key);
  return v ? as_integer(*v, node.child(key)) : fallback;
}

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(as_number(v[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

std::pair<double, double> knot_pair(const json& v, const std::string& path) {
  const auto xs = number_list(v, path);
  if (xs.size() != 2) throw ConfigError(path, "expected [low, high]");
  if (!(xs[0] < xs[1])) throw ConfigError(path, "knots must satisfy low < high");
  return {xs[0], xs[1]};
}

// Scalar (broadcast to n) or per-individual array.
Eigen::VectorXd bound_vector(const json& v, const std::string& path, int n) {
  Eigen::VectorXd out(n);
  if (v.is_number()) {
    out.setConstant(v.get<double>());
  } else {
    const auto xs = number_list(v, path);
    if (static_cast<int>(xs.size()) != n)
      throw ConfigError(path, "expected " + std::to_string(n) + " entries, got " +
                                  std::to_string(xs.size()));
    for (int i = 0; i < n; ++i) out[i] = xs[i];
  }
  for (int i = 0; i < n; ++i)
    if (!(out[i] > 0.0)) throw ConfigError(path, "bounds must be positive");
  return out;
}

CurveShape parse_shape(const std::string& s, const std::string& path) {
  if (s == "piecewise-linear") return CurveShape::kPiecewiseLinear;
  if (s == "sigmoid") return CurveShape::kSigmoid;
  throw ConfigError(path, "unknown curve shape '" + s + "' (piecewise-linear, sigmoid)");
}

CurveTrend trend(const json& v, const std::string& path) {
  const auto name = as_string(v, path);
  if (auto t = parse_curve_trend(name)) return *t;
  throw ConfigError(path, "unknown trend '" + name + "' (increasing, decreasing, constant)");
}

CurveTemplate parse_curves(Node node) {
  CurveTemplate c;
  if (const json* v = node.get("shape")) c.shape = parse_shape(as_string(*v, node.child("shape")), node.child("shape"));
  if (const json* v = node.get("f_trend")) c.f_trend = trend(*v, node.child("f_trend"));
  if (const json* v = node.get("g_trend")) c.g_trend = trend(*v, node.child("g_trend"));
  c.knot_range = number_or(node, "knot_range", c.knot_range);
  if (!(c.knot_range > 0.0)) throw ConfigError(node.child("knot_range"), "must be positive");
  if (const json* v = node.get("increasing_effect"))
    c.increasing_effect = as_bool(*v, node.child("increasing_effect"));
  if (const json* v = node.get("f_knots")) c.f_knots = knot_pair(*v, node.child("f_knots"));
  if (const json* v = node.get("g_knots")) c.g_knots = knot_pair(*v, node.child("g_knots"));
  if (const json* v = node.get("identical")) c.identical_curves = as_bool(*v, node.child("identical"));
  if (const json* v = node.get("f_reversal")) c.f_reversal = as_number(*v, node.child("f_reversal"));
  node.reject_unknown();
  return c;
}

NoiseSpec parse_noise(Node node) {
  const std::string kind = node.has("kind") ? as_string(node.require("kind"), node.child("kind"))
                                            : std::string("capped-gaussian");
  NoiseSpec spec;
  if (kind == "capped-gaussian") {
    const double sigma = number_or(node, "sigma", 0.5);
    const double cap = number_or(node, "cap", 5.0);
    if (!(sigma >= 0.0)) throw ConfigError(node.child("sigma"), "must be non-negative");
    if (!(cap > 0.0)) throw ConfigError(node.child("cap"), "must be positive");
    spec = NoiseSpec::capped_gaussian(sigma, cap);
  } else if (kind == "integer-lattice") {
    const json& mass = node.require("mass");
    if (!mass.is_object()) throw ConfigError(node.child("mass"), "expected an object of increment: probability");
    std::map<int, double> table;
    for (const auto& [key, value] : mass.items()) {
      const std::string path = node.child("mass") + "." + key;
      int k = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
      if (ec != std::errc{} || ptr != key.data() + key.size())
        throw ConfigError(path, "increment keys must be integers");
      table[k] = as_number(value, path);
    }
    spec = NoiseSpec::integer_lattice(table, number_or(node, "z_star", 1.0), number_or(node, "l", 0.1));
    if (const json* v = node.get("cap")) spec.cap = as_number(*v, node.child("cap"));
  } else {
    throw ConfigError(node.child("kind"), "unknown noise kind '" + kind + "' (capped-gaussian, integer-lattice)");
  }
  node.reject_unknown();
  try {
    validate(spec);
  } catch (const std::exception& e) {
    throw ConfigError(node.path_display(), e.what());
  }
  return spec;
}

InitialWelfare parse_initial(Node node, int n, const std::filesystem::path& base_dir) {
  const std::string kind = as_string(node.require("kind"), node.child("kind"));
  InitialWelfare out;
  if (kind == "capped-normal") {
    CappedNormalWelfare cn;
    cn.mean = number_or(node, "mean", cn.mean);
    cn.sd = number_or(node, "sd", cn.sd);
    cn.min = number_or(node, "min", cn.min);
    cn.max = number_or(node, "max", cn.max);
    if (!(cn.sd >= 0.0)) throw ConfigError(node.child("sd"), "must be non-negative");
    if (!(cn.min <= cn.max)) throw ConfigError(node.child("max"), "must be >= min");
    out = cn;
  } else if (kind == "values") {
    const auto xs = number_list(node.require("values"), node.child("values"));
    if (static_cast<int>(xs.size()) != n)
      throw ConfigError(node.child("values"), "expected " + std::to_string(n) + " entries, got " +
                                                  std::to_string(xs.size()));
    out = Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(xs.data(), n));
  } else if (kind == "csv") {
    std::filesystem::path file = as_string(node.require("path"), node.child("path"));
    if (file.is_relative()) file = base_dir / file;
    const std::string column =
        node.has("column") ? as_string(node.require("column"), node.child("column")) : "income";
    const auto per = integer_or(node, "samples_per_individual", 200);
    const double unit = number_or(node, "unit", 1000.0);
    if (per < 1) throw ConfigError(node.child("samples_per_individual"), "must be >= 1");
    if (!(unit > 0.0)) throw ConfigError(node.child("unit"), "must be positive");
    const auto ingest = ingest_income_csv(file, column, static_cast<int>(per), unit);
    if (ingest.welfare.size() != n)
      throw ConfigError(node.child("path"), "income file yields " +
                                                std::to_string(ingest.welfare.size()) +
                                                " individuals, population.n is " + std::to_string(n));
    out = ingest.welfare;
  } else {
    throw ConfigError(node.child("kind"), "unknown initial welfare kind '" + kind + "' (capped-normal, values, csv)");
  }
  node.reject_unknown();
  return out;
}

PolicySpec parse_policy(const json& v, const std::string& path) {
  auto kind_of = [&](const std::string& name, const std::string& p) {
    if (auto k = parse_policy_kind(name)) return *k;
    throw ConfigError(p, "unknown policy '" + name + "'");
  };
  if (v.is_string()) return PolicySpec::of(kind_of(v.get<std::string>(), path));
  Node node(v, path);
  PolicySpec spec = PolicySpec::of(kind_of(as_string(node.require("kind"), node.child("kind")), node.child("kind")));
  if (const json* t = node.get("tie_break")) {
    const auto name = as_string(*t, node.child("tie_break"));
    const auto tie = parse_tie_break(name);
    if (!tie) throw ConfigError(node.child("tie_break"), "unknown tie-break '" + name + "' (lowest-index, lowest-welfare)");
    if (is_proportional(spec.kind))
      throw ConfigError(node.child("tie_break"), "proportional policies have no tie-break");
    spec.tie_break = *tie;
  }
  node.reject_unknown();
  return spec;
}

SweepConfig parse_sweep(Node node, const ExperimentConfig& base) {
  SweepConfig s;
  s.base = base;
  s.seed = base.seed;
  s.jobs = base.jobs;
  s.b_values = number_list(node.require("b"), node.child("b"));
  s.sigma_values = number_list(node.require("sigma"), node.child("sigma"));
  for (std::size_t k = 0; k < s.b_values.size(); ++k)
    if (!(s.b_values[k] > 0.0 && s.b_values[k] <= 1.0))
      throw ConfigError(node.child("b") + "[" + std::to_string(k) + "]", "must lie in (0, 1]");
  for (std::size_t k = 0; k < s.sigma_values.size(); ++k)
    if (!(s.sigma_values[k] >= 0.0))
      throw ConfigError(node.child("sigma") + "[" + std::to_string(k) + "]", "must be non-negative");
  s.g_hi = number_or(node, "g_hi", base.bounds.g_hi.size() ? base.bounds.g_hi[0] : s.g_hi);
  s.f_lo = number_or(node, "f_lo", base.bounds.f_lo.size() ? base.bounds.f_lo[0] : s.f_lo);
  s.f_hi = number_or(node, "f_hi", base.bounds.f_hi.size() ? base.bounds.f_hi[0] : s.f_hi);
  s.replications = static_cast<int>(integer_or(node, "replications", s.replications));
  s.horizon = integer_or(node, "horizon", s.horizon);
  s.early_checkpoint = integer_or(node, "early_checkpoint", s.early_checkpoint);
  node.reject_unknown();
  try {
    validate(s);
  } catch (const std::exception& e) {
    throw ConfigError(node.path_display(), e.what());
  }
  return s;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r' && c != '\n') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

IncomeIngest ingest_income_csv(const std::filesystem::path& path, std::string_view income_column,
                               int samples_per_individual, double unit) {
  if (samples_per_individual < 1) throw std::invalid_argument("samples_per_individual must be >= 1");
  if (!(unit > 0.0)) throw std::invalid_argument("unit must be positive");
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open income file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw IngestError(path.string() + ": file is empty");
  const auto header = split_csv_line(line);
  std::size_t column = header.size();
  for (std::size_t k = 0; k < header.size(); ++k)
    if (trim(header[k]) == income_column) column = k;
  if (column == header.size())
    throw IngestError(path.string() + ": no column named '" + std::string(income_column) + "'");

  std::vector<double> incomes;
  std::vector<std::string> row_errors;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const auto value =
        column < fields.size() ? parse_number(fields[column]) : std::optional<double>{};
    if (!value || !std::isfinite(*value)) {
      row_errors.push_back("row " + std::to_string(row) + ": '" +
                           (column < fields.size() ? fields[column] : std::string()) +
                           "' is not a finite number");
      continue;
    }
    incomes.push_back(*value);
  }
  if (!row_errors.empty())
    throw IngestError(path.string() + ": " + std::to_string(row_errors.size()) + " invalid rows",
                      std::move(row_errors));
  if (incomes.empty()) throw IngestError(path.string() + ": no income rows");

  std::sort(incomes.begin(), incomes.end());
  IncomeIngest out;
  const std::size_t per = static_cast<std::size_t>(samples_per_individual);
  const std::size_t groups = incomes.size() / per;
  out.rows_used = groups * per;
  out.rows_discarded = incomes.size() - out.rows_used;
  if (groups == 0)
    throw IngestError(path.string() + ": fewer rows than samples_per_individual");
  if (out.rows_discarded > 0)
    out.warnings.push_back("discarded " + std::to_string(out.rows_discarded) +
                           " rows forming a partial group");

  out.welfare.resize(static_cast<Eigen::Index>(groups));
  for (std::size_t g = 0; g < groups; ++g) {
    double sum = 0.0;
    for (std::size_t k = g * per; k < (g + 1) * per; ++k) sum += incomes[k];
    out.welfare[static_cast<Eigen::Index>(g)] = sum / static_cast<double>(per) / unit;
  }

  const double lo = incomes.front();
  const double width = (incomes.back() - lo) / 13.0;
  for (double x : incomes) {
    std::size_t bin = width > 0.0 ? static_cast<std::size_t>((x - lo) / width) : 0;
    out.histogram[std::min<std::size_t>(bin, 12)]++;
  }
  return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

LoadedConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  Node root(doc, "");
  LoadedConfig out;
  ExperimentConfig& cfg = out.experiment;

  if (const json* v = root.get("id")) cfg.id = as_string(*v, "id");

  Node pop = root.object("population");
  const auto n = as_integer(pop.require("n"), "population.n");
  if (n < 1) throw ConfigError("population.n", "must be >= 1");
  const auto m = as_integer(pop.require("budget"), "population.budget");
  if (m < 1 || m > n) throw ConfigError("population.budget", "must lie in [1, n]");
  pop.reject_unknown();

  Node bounds = root.object("bounds");
  const int ni = static_cast<int>(n);
  cfg.bounds.budget = static_cast<int>(m);
  cfg.bounds.f_lo = bound_vector(bounds.require("f_lo"), "bounds.f_lo", ni);
  cfg.bounds.f_hi = bound_vector(bounds.require("f_hi"), "bounds.f_hi", ni);
  cfg.bounds.g_lo = bound_vector(bounds.require("g_lo"), "bounds.g_lo", ni);
  cfg.bounds.g_hi = bound_vector(bounds.require("g_hi"), "bounds.g_hi", ni);
  bounds.reject_unknown();
  for (int i = 0; i < ni; ++i) {
    if (cfg.bounds.f_lo[i] > cfg.bounds.f_hi[i]) throw ConfigError("bounds.f_hi", "must be >= f_lo");
    if (cfg.bounds.g_lo[i] > cfg.bounds.g_hi[i]) throw ConfigError("bounds.g_hi", "must be >= g_lo");
  }

  if (root.has("curves")) cfg.curves = parse_curves(root.object("curves"));
  if (root.has("noise")) cfg.noise = parse_noise(root.object("noise"));
  if (root.has("initial_welfare"))
    cfg.initial = parse_initial(root.object("initial_welfare"), ni, base_dir);

  const json& policies = root.require("policies");
  if (!policies.is_array() || policies.empty())
    throw ConfigError("policies", "expected a non-empty array");
  for (std::size_t k = 0; k < policies.size(); ++k)
    cfg.policies.push_back(parse_policy(policies[k], "policies[" + std::to_string(k) + "]"));

  cfg.horizon = integer_or(root, "horizon", cfg.horizon);
  if (cfg.horizon < 1) throw ConfigError("horizon", "must be >= 1");
  cfg.replications = static_cast<int>(integer_or(root, "replications", cfg.replications));
  if (cfg.replications < 1) throw ConfigError("replications", "must be >= 1");
  if (const json* v = root.get("seed")) {
    if (!v->is_number_unsigned()) throw ConfigError("seed", "expected an unsigned 64-bit integer");
    cfg.seed = v->get<std::uint64_t>();
  }
  cfg.jobs = static_cast<int>(integer_or(root, "jobs", cfg.jobs));
  if (cfg.jobs < 1) throw ConfigError("jobs", "must be >= 1");
  if (const json* v = root.get("checkpoints")) {
    if (!v->is_array()) throw ConfigError("checkpoints", "expected an array of integers");
    for (std::size_t k = 0; k < v->size(); ++k) {
      const std::string path = "checkpoints[" + std::to_string(k) + "]";
      const auto t = as_integer((*v)[k], path);
      if (t < 1 || t > cfg.horizon) throw ConfigError(path, "must lie in [1, horizon]");
      cfg.checkpoints.push_back(t);
    }
  }

  if (root.has("sweep")) out.sweep = parse_sweep(root.object("sweep"), cfg);
  if (root.has("grid")) {
    Node grid = root.object("grid");
    out.grid_tie_se = number_or(grid, "tie_se", out.grid_tie_se);
    if (!(out.grid_tie_se >= 0.0)) throw ConfigError("grid.tie_se", "must be non-negative");
    grid.reject_unknown();
  }
  root.reject_unknown();

  try {
    validate(cfg);
  } catch (const std::exception& e) {
    throw ConfigError("", e.what());
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<ResultRow> result_rows(const Comparison& comparison) {
  std::vector<ResultRow> rows;
  for (const auto& run : comparison.runs) {
    const auto& res = run.result;
    std::optional<double> predicted;
    if (run.predicted) predicted = run.predicted->average;
    for (std::size_t r = 0; r < res.replications.size(); ++r)
      for (std::size_t c = 0; c < res.checkpoints.size(); ++c)
        rows.push_back({comparison.experiment_id, run.label, static_cast<int>(r),
                        res.checkpoints[c], res.replications[r].social_welfare[c], predicted});
  }
  return rows;
}

void write_results(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kResultsHeader << '\n';
  for (const auto& row : rows) {
    out << row.experiment_id << ',' << row.policy << ',' << row.replication << ','
        << row.checkpoint_t << ',' << format_double(row.social_welfare) << ',';
    if (row.predicted_rate) out << format_double(*row.predicted_rate);
    out << '\n';
  }
}

void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_results(rows, out);
  finish_output(out, path);
}

void write_results(const Comparison& comparison, const std::filesystem::path& path) {
  write_results(result_rows(comparison), path);
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kResultsHeader)
    throw std::runtime_error(path.string() + ": missing results header");
  std::vector<ResultRow> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    auto fail = [&] {
      return std::runtime_error(path.string() + ": malformed row " + std::to_string(row));
    };
    if (f.size() != 6) throw fail();
    ResultRow r;
    r.experiment_id = f[0];
    r.policy = f[1];
    const auto rep = parse_number(f[2]);
    const auto t = parse_number(f[3]);
    const auto sw = parse_number(f[4]);
    if (!rep || !t || !sw) throw fail();
    r.replication = static_cast<int>(*rep);
    r.checkpoint_t = static_cast<std::int64_t>(*t);
    r.social_welfare = *sw;
    if (!trim(f[5]).empty()) {
      r.predicted_rate = parse_number(f[5]);
      if (!r.predicted_rate) throw fail();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_sweep(const std::vector<SweepResult>& cells, std::int64_t early_checkpoint,
                 std::int64_t horizon, std::ostream& out) {
  out << kSweepHeader << '\n';
  for (const auto& c : cells) {
    for (const auto& [t, rate] : {std::pair{early_checkpoint, c.winrate_early},
                                  std::pair{horizon, c.winrate_final}}) {
      out << format_double(c.b) << ',' << format_double(c.sigma) << ',' << t << ',';
      if (!c.infeasible) out << format_double(rate);
      out << ',' << c.n_reps << '\n';
    }
  }
}

void write_sweep(const std::vector<SweepResult>& cells, std::int64_t early_checkpoint,
                 std::int64_t horizon, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_sweep(cells, early_checkpoint, horizon, out);
  finish_output(out, path);
}

void write_rates(const std::vector<RatePrediction>& predictions, std::ostream& out) {
  out << kRatesHeader << '\n';
  for (const auto& p : predictions) {
    const auto family = to_string(p.family);
    const auto regime = to_string(p.regime);
    if (p.rates) {
      for (Eigen::Index i = 0; i < p.rates->size(); ++i)
        out << family << ',' << i << ',' << format_double((*p.rates)[i]) << ',' << regime << '\n';
    }
    out << family << ",mean," << format_double(p.average) << ',' << regime << '\n';
  }
}

}  // namespace wdl
