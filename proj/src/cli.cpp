#include "wdl/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wdl/analysis.hpp"
#include "wdl/errors.hpp"
#include "wdl/experiment.hpp"
#include "wdl/grid.hpp"
#include "wdl/io.hpp"
#include "wdl/ruin.hpp"
#include "wdl/sweep.hpp"

namespace wdl {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Options {
  std::string config;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::vector<std::string> policies;
  std::optional<std::int64_t> horizon;
  std::optional<int> reps;
  // ruin-bound
  std::optional<double> p;
  std::string dist;
  double u = 0.0;
  std::int64_t mc_trials = 0;
  std::int64_t mc_horizon = 10000;
};

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("WDL_SEED");
  if (!raw || !*raw) return std::nullopt;
  std::uint64_t value = 0;
  const std::string s(raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("WDL_SEED", "expected an unsigned 64-bit integer, got '" + s + "'");
  return value;
}

LoadedConfig load_with_overrides(const Options& opt) {
  LoadedConfig loaded = load_config(opt.config);
  ExperimentConfig& cfg = loaded.experiment;
  if (opt.seed) {
    cfg.seed = *opt.seed;
  } else if (auto s = env_seed()) {
    cfg.seed = *s;
  }
  if (opt.jobs) cfg.jobs = *opt.jobs;
  if (opt.horizon) {
    cfg.horizon = *opt.horizon;
    std::erase_if(cfg.checkpoints, [&](std::int64_t t) { return t > cfg.horizon; });
  }
  if (opt.reps) cfg.replications = *opt.reps;
  if (!opt.policies.empty()) {
    cfg.policies.clear();
    for (const auto& name : opt.policies) {
      const auto kind = parse_policy_kind(name);
      if (!kind) throw ConfigError("--policies", "unknown policy '" + name + "'");
      cfg.policies.push_back(PolicySpec::of(*kind));
    }
  }
  if (loaded.sweep) {
    loaded.sweep->seed = cfg.seed;
    loaded.sweep->jobs = cfg.jobs;
    loaded.sweep->base = cfg;
    if (opt.horizon) loaded.sweep->horizon = *opt.horizon;
    if (opt.reps) loaded.sweep->replications = *opt.reps;
    validate(*loaded.sweep);
  }
  validate(cfg);
  return loaded;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

int cmd_check(const Options& opt, std::ostream& out) {
  const BoundSet b = load_config(opt.config).experiment.bounds;
  const double zs = zeta(b.f_lo, b.g_hi, b.budget);
  const double zr = zeta(b.f_hi, b.g_lo, b.budget);
  out << "survival: " << (zs > 0.0 ? "true" : "false") << " (zeta=" << fmt(zs) << ")\n";
  out << "ruin: " << (zr < 0.0 ? "true" : "false") << " (zeta=" << fmt(zr) << ")\n";
  out << "regime: " << to_string(classify_regime(b)) << '\n';
  return kExitOk;
}

int cmd_rates(const Options& opt, std::ostream& out) {
  const BoundSet b = load_config(opt.config).experiment.bounds;
  std::vector<RatePrediction> predictions;
  for (auto family : {PolicyFamily::kRawlsian, PolicyFamily::kUtilitarian, PolicyFamily::kRandom}) {
    try {
      const auto p = predicted_rates(family, b);
      out << to_string(family) << ": average=" << fmt(p.average)
          << " regime=" << to_string(p.regime);
      if (p.rates) out << " per-individual=" << (b.is_uniform() ? fmt((*p.rates)[0]) + " (uniform)" : "see CSV");
      out << '\n';
      predictions.push_back(p);
    } catch (const std::exception& e) {
      out << to_string(family) << ": no prediction (" << e.what() << ")\n";
    }
  }
  if (!opt.out_path.empty()) {
    auto f = open_out(opt.out_path);
    write_rates(predictions, f);
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  const auto loaded = load_with_overrides(opt);
  const Comparison cmp = compare_policies(loaded.experiment);
  const std::int64_t horizon = loaded.experiment.horizon;
  out << "experiment " << cmp.experiment_id << ": N=" << loaded.experiment.bounds.n()
      << " M=" << loaded.experiment.bounds.budget << " T=" << horizon
      << " R=" << loaded.experiment.replications << " seed=" << loaded.experiment.seed << '\n';
  for (const auto& run : cmp.runs) {
    out << "  " << run.label << ": welfare(T)=" << fmt(run.result.final_mean())
        << " se=" << fmt(run.result.final_se());
    if (run.predicted) out << " predicted=" << fmt(run.predicted->average);
    out << '\n';
  }
  if (!opt.out_path.empty()) write_results(cmp, opt.out_path);
  return kExitOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  const auto loaded = load_with_overrides(opt);
  if (!loaded.sweep) throw ConfigError("sweep", "config has no sweep section");
  const auto& s = *loaded.sweep;
  const auto cells = heterogeneity_sweep(s);
  out << "b\tsigma\twin(t=" << s.early_checkpoint << ")\twin(t=" << s.horizon << ")\treps\n";
  for (const auto& c : cells) {
    out << fmt(c.b) << '\t' << fmt(c.sigma) << '\t';
    if (c.infeasible)
      out << "infeasible\tinfeasible\t0\n";
    else
      out << fmt(c.winrate_early) << '\t' << fmt(c.winrate_final) << '\t' << c.n_reps << '\n';
  }
  if (!opt.out_path.empty()) write_sweep(cells, s.early_checkpoint, s.horizon, opt.out_path);
  return kExitOk;
}

int cmd_grid(const Options& opt, std::ostream& out) {
  const auto loaded = load_with_overrides(opt);
  const auto grid = monotonicity_grid(loaded.experiment, loaded.grid_tie_se);
  std::ostringstream csv;
  csv << "f_trend,g_trend,min_u_mean,max_u_mean,pooled_se,outcome\n";
  out << "f\\g\t";
  for (auto g : kGridTrends) out << to_string(g) << '\t';
  out << '\n';
  for (auto f : kGridTrends) {
    out << to_string(f) << '\t';
    for (auto g : kGridTrends) {
      const auto& cell = grid_cell(grid, f, g);
      out << to_string(cell.outcome) << '\t';
      csv << to_string(f) << ',' << to_string(g) << ',' << format_double(cell.min_u_mean) << ','
          << format_double(cell.max_u_mean) << ',' << format_double(cell.pooled_se) << ','
          << to_string(cell.outcome) << '\n';
    }
    out << '\n';
  }
  if (!opt.out_path.empty()) {
    auto f = open_out(opt.out_path);
    f << csv.str();
  }
  return kExitOk;
}

IncrementDistribution parse_dist(const std::string& text) {
  IncrementDistribution d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("--dist", "expected value:probability pairs, got '" + item + "'");
    try {
      d.values.push_back(std::stoi(item.substr(0, colon)));
      d.probabilities.push_back(std::stod(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw ConfigError("--dist", "cannot parse '" + item + "'");
    }
  }
  return d;
}

int cmd_ruin_bound(const Options& opt, std::ostream& out) {
  if (opt.p.has_value() == !opt.dist.empty())
    throw ConfigError("", "ruin-bound needs exactly one of --p or --dist");
  IncrementDistribution dist;
  if (opt.p) {
    if (!(*opt.p >= 0.0 && *opt.p <= 1.0)) throw ConfigError("--p", "must lie in [0, 1]");
    dist = IncrementDistribution::plus_minus_one(*opt.p);
  } else {
    dist = parse_dist(opt.dist);
  }
  if (!(opt.u > 0.0)) throw ConfigError("--u", "must be positive");
  const auto adj = adjustment_coefficient(dist);
  const double bound = lundberg_bound(opt.u, adj.r_star);
  out << "r* = " << fmt(adj.r_star) << " (residual " << fmt(adj.residual) << ", "
      << adj.iterations << " iterations)\n";
  out << "lundberg bound = " << fmt(bound) << " (u=" << fmt(opt.u) << ")\n";
  if (opt.mc_trials > 0) {
    std::uint64_t seed = 1;
    if (opt.seed)
      seed = *opt.seed;
    else if (auto s = env_seed())
      seed = *s;
    Rng rng(derive_seed(seed, stream::kNoise));
    const auto est = estimate_ruin_probability(dist, opt.u, opt.mc_horizon, opt.mc_trials, rng);
    out << "monte-carlo ruin = " << fmt(est.estimate) << " +/- " << fmt(est.standard_error)
        << " (" << est.trials << " trials, horizon " << opt.mc_horizon << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Welfare dynamics under sequential intervention policies", "wdl"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON config file")->required()->check(CLI::ExistingFile);
  };
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_path, "CSV output path");
    sub->add_option("--seed", opt.seed, "base seed (falls back to WDL_SEED, then the config)");
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--policies", opt.policies, "comma-separated policy names")->delimiter(',');
    sub->add_option("--horizon", opt.horizon, "steps T")->check(CLI::PositiveNumber);
    sub->add_option("--reps", opt.reps, "replications R")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "survival and ruin conditions");
  add_config(check);
  auto* rates = app.add_subcommand("rates", "closed-form growth rates per policy family");
  add_config(rates);
  rates->add_option("--out", opt.out_path, "rates CSV output path");
  auto* simulate = app.add_subcommand("simulate", "compare policies by simulation");
  add_config(simulate);
  add_run_flags(simulate);
  auto* sweep = app.add_subcommand("sweep", "heterogeneous-bounds win-rate sweep");
  add_config(sweep);
  add_run_flags(sweep);
  auto* grid = app.add_subcommand("grid", "monotonicity grid of min-U versus max-U");
  add_config(grid);
  add_run_flags(grid);
  auto* ruin = app.add_subcommand("ruin-bound", "adjustment coefficient and Lundberg bound");
  ruin->add_option("--p", opt.p, "probability of a +1 step in a +/-1 walk");
  ruin->add_option("--dist", opt.dist, "increment distribution as value:prob,value:prob");
  ruin->add_option("--u", opt.u, "initial reserve u")->required();
  ruin->add_option("--mc-trials", opt.mc_trials, "Monte-Carlo trials (0 disables)");
  ruin->add_option("--mc-horizon", opt.mc_horizon, "Monte-Carlo horizon")->check(CLI::PositiveNumber);
  ruin->add_option("--seed", opt.seed, "Monte-Carlo seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (check->parsed()) return cmd_check(opt, out);
    if (rates->parsed()) return cmd_rates(opt, out);
    if (simulate->parsed()) return cmd_simulate(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out);
    if (grid->parsed()) return cmd_grid(opt, out);
    if (ruin->parsed()) return cmd_ruin_bound(opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IngestError& e) {
    err << "input error: " << e.what() << '\n';
    for (const auto& row : e.row_errors()) err << "  " << row << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace wdl
