#include "wdl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "wdl/errors.hpp"
#include "wdl/parallel.hpp"

namespace wdl {

namespace {

constexpr int kMaxKnotDraws = 10000;

std::pair<double, double> draw_knots(double range, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    // range * (1 - U) lies in (0, range].
    const double a = range * (1.0 - unit(rng));
    const double b = range * (1.0 - unit(rng));
    if (a != b) return {std::min(a, b), std::max(a, b)};
  }
}

ResponseCurve make_curve(const CurveTemplate& tpl, CurveTrend trend, double lo, double hi,
                         std::pair<double, double> knots) {
  if (trend == CurveTrend::kConstant || lo == hi) return ResponseCurve::constant(0.5 * (lo + hi));
  const Direction dir =
      trend == CurveTrend::kIncreasing ? Direction::kNonDecreasing : Direction::kNonIncreasing;
  if (tpl.shape == CurveShape::kSigmoid)
    return ResponseCurve::sigmoid(lo, hi, knots.first, knots.second, dir);
  return ResponseCurve::piecewise_linear(lo, hi, knots.first, knots.second, dir);
}

struct CurvePair {
  ResponseCurve f, g;
};

// Knots of an increasing f and decreasing g with f + g non-decreasing, drawn
// from the uniform knot distribution conditioned on that event. The event
// holds iff g's ramp [c, d] lies inside f's ramp [a, b] and is no steeper,
// i.e. d - c >= r (b - a) with r = g span / f span < 1. Given (a, b) the
// admissible (c, d) form a triangle of area proportional to (b - a)^2.
std::pair<std::pair<double, double>, std::pair<double, double>> draw_monotone_effect_knots(
    double range, double r, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::pair<double, double> f;
  int attempt = 0;
  do {
    if (++attempt > kMaxKnotDraws)
      throw InfeasibleCellError("could not draw knots with a non-decreasing treatment effect");
    f = draw_knots(range, rng);
  } while (unit(rng) >= std::pow((f.second - f.first) / range, 2));
  const double width = f.second - f.first;
  const double slack = (1.0 - r) * width * std::sqrt(unit(rng));
  const double c = f.first + slack * unit(rng);
  return {f, {c, c + width - slack}};
}

CurvePair sample_pair(const CurveTemplate& tpl, double f_lo, double f_hi, double g_lo,
                      double g_hi, Rng& rng) {
  const bool filter = tpl.increasing_effect && tpl.f_trend == CurveTrend::kIncreasing &&
                      tpl.g_trend == CurveTrend::kDecreasing &&
                      tpl.shape == CurveShape::kPiecewiseLinear && !tpl.f_reversal &&
                      !tpl.f_knots && !tpl.g_knots && f_lo < f_hi && g_lo < g_hi &&
                      g_hi - g_lo < f_hi - f_lo;
  std::pair<double, double> fk, gk;
  if (filter) {
    std::tie(fk, gk) =
        draw_monotone_effect_knots(tpl.knot_range, (g_hi - g_lo) / (f_hi - f_lo), rng);
  } else {
    fk = tpl.f_knots ? *tpl.f_knots : draw_knots(tpl.knot_range, rng);
    gk = tpl.g_knots ? *tpl.g_knots : draw_knots(tpl.knot_range, rng);
  }
  CurvePair c{make_curve(tpl, tpl.f_trend, f_lo, f_hi, fk),
              make_curve(tpl, tpl.g_trend, g_lo, g_hi, gk)};
  if (tpl.f_reversal) c.f = c.f.with_reversal(*tpl.f_reversal);
  return c;
}

double sample_sd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string_view to_string(CurveTrend trend) noexcept {
  switch (trend) {
    case CurveTrend::kIncreasing: return "increasing";
    case CurveTrend::kDecreasing: return "decreasing";
    case CurveTrend::kConstant: return "constant";
  }
  return "constant";
}

std::optional<CurveTrend> parse_curve_trend(std::string_view name) noexcept {
  if (name == "increasing") return CurveTrend::kIncreasing;
  if (name == "decreasing") return CurveTrend::kDecreasing;
  if (name == "constant") return CurveTrend::kConstant;
  return std::nullopt;
}

void validate(const ExperimentConfig& cfg) {
  validate(cfg.bounds);
  if (cfg.horizon < 1) throw StructuralError("horizon must be >= 1");
  if (cfg.replications < 1) throw StructuralError("replications must be >= 1");
  if (cfg.policies.empty()) throw StructuralError("policy list is empty");
  if (!(cfg.curves.knot_range > 0.0)) throw StructuralError("knot range must be positive");
  for (const auto& k : {cfg.curves.f_knots, cfg.curves.g_knots})
    if (k && !(k->first < k->second)) throw StructuralError("fixed knots must be increasing");
  for (auto t : cfg.checkpoints)
    if (t < 1 || t > cfg.horizon) throw StructuralError("checkpoint outside [1, horizon]");
  validate(cfg.noise);
  if (const auto* fixed = std::get_if<Eigen::VectorXd>(&cfg.initial)) {
    if (fixed->size() != cfg.bounds.n())
      throw StructuralError("initial welfare has " + std::to_string(fixed->size()) +
                            " entries, population has " + std::to_string(cfg.bounds.n()));
  } else {
    const auto& cn = std::get<CappedNormalWelfare>(cfg.initial);
    if (!(cn.sd >= 0.0) || !(cn.min <= cn.max))
      throw StructuralError("capped-normal initial welfare needs sd >= 0 and min <= max");
  }
}

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> cps;
  if (horizon >= 10) cps.push_back(10);
  constexpr int kPoints = 20;
  for (int k = 1; k <= kPoints; ++k) {
    const std::int64_t t = std::max<std::int64_t>(1, horizon * k / kPoints);
    cps.push_back(t);
  }
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

std::vector<std::int64_t> effective_checkpoints(const ExperimentConfig& cfg) {
  std::vector<std::int64_t> cps =
      cfg.checkpoints.empty() ? default_checkpoints(cfg.horizon) : cfg.checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

PopulationModel build_model(const ExperimentConfig& cfg, Rng& rng) {
  const BoundSet& b = cfg.bounds;
  PopulationModel model;
  model.n = b.n();
  model.budget = b.budget;
  model.noise = cfg.noise;
  model.return_curves.reserve(model.n);
  model.decay_curves.reserve(model.n);
  for (int i = 0; i < model.n; ++i) {
    if (cfg.curves.identical_curves && i > 0) {
      model.return_curves.push_back(model.return_curves.front());
      model.decay_curves.push_back(model.decay_curves.front());
      continue;
    }
    auto pair = sample_pair(cfg.curves, b.f_lo[i], b.f_hi[i], b.g_lo[i], b.g_hi[i], rng);
    model.return_curves.push_back(std::move(pair.f));
    model.decay_curves.push_back(std::move(pair.g));
  }
  validate(model);
  return model;
}

Eigen::VectorXd draw_initial_welfare(const ExperimentConfig& cfg, Rng& rng) {
  if (const auto* fixed = std::get_if<Eigen::VectorXd>(&cfg.initial)) return *fixed;
  const auto& cn = std::get<CappedNormalWelfare>(cfg.initial);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd u(cfg.bounds.n());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    u[i] = std::clamp(cn.mean + cn.sd * normal(rng), cn.min, cn.max);
  return u;
}

double finite_time_welfare(const Eigen::VectorXd& welfare_now,
                           const Eigen::VectorXd& welfare_start, std::int64_t t) {
  if (t < 1) throw std::domain_error("finite_time_welfare: t must be >= 1");
  if (welfare_now.size() != welfare_start.size() || welfare_now.size() == 0)
    throw StructuralError("finite_time_welfare: length mismatch");
  return (welfare_now - welfare_start).mean() / static_cast<double>(t);
}

std::size_t TrajectoryResult::checkpoint_index(std::int64_t t) const {
  const auto it = std::find(checkpoints.begin(), checkpoints.end(), t);
  if (it == checkpoints.end())
    throw std::out_of_range("checkpoint " + std::to_string(t) + " was not recorded");
  return static_cast<std::size_t>(it - checkpoints.begin());
}

double TrajectoryResult::se_at(std::int64_t t) const {
  return std_welfare[checkpoint_index(t)] / std::sqrt(static_cast<double>(replications.size()));
}

double pooled_standard_error(const TrajectoryResult& a, const TrajectoryResult& b,
                             std::int64_t t) {
  return std::hypot(a.se_at(t), b.se_at(t));
}

namespace {

ReplicationTrace simulate_replication(const ExperimentConfig& cfg, const PolicySpec& policy,
                                      const std::vector<std::int64_t>& checkpoints,
                                      std::uint64_t rep_seed) {
  Rng curve_rng(derive_seed(rep_seed, stream::kCurves));
  Rng welfare_rng(derive_seed(rep_seed, stream::kInitialWelfare));
  Rng noise_rng(derive_seed(rep_seed, stream::kNoise));
  Rng policy_rng(derive_seed(rep_seed, stream::kPolicy));

  const PopulationModel model = build_model(cfg, curve_rng);
  NoiseSampler noise(model.noise);

  ReplicationTrace trace;
  trace.seed = rep_seed;
  trace.initial_welfare = draw_initial_welfare(cfg, welfare_rng);
  PopulationState state{0, trace.initial_welfare};

  const std::int64_t horizon = cfg.horizon;
  const std::int64_t window = std::max<std::int64_t>(1, horizon / 10);
  const std::int64_t window_start = horizon - window;
  const bool proportional = is_proportional(policy.kind);

  Eigen::VectorXd share = Eigen::VectorXd::Zero(model.n);
  Eigen::VectorXd previous;
  Eigen::Index previous_top = -1;
  trace.winners_stable = true;

  std::size_t next_cp = 0;
  trace.social_welfare.reserve(checkpoints.size());
  trace.welfare_gap.reserve(checkpoints.size());

  for (std::int64_t t = 0; t < horizon; ++t) {
    const AllocationVector alloc = select_allocation(policy, state, model, policy_rng);
    if (t >= window_start) {
      share += alloc.entries;
      if (proportional) {
        Eigen::Index top;
        alloc.entries.maxCoeff(&top);
        if (previous_top >= 0 && top != previous_top) trace.winners_stable = false;
        previous_top = top;
      } else {
        if (previous.size() && previous != alloc.entries) trace.winners_stable = false;
        previous = alloc.entries;
      }
    }
    advance_population(state, alloc, model, noise, noise_rng);
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == state.t) {
      trace.social_welfare.push_back(
          finite_time_welfare(state.welfare, trace.initial_welfare, state.t));
      trace.welfare_gap.push_back(state.welfare.maxCoeff() - state.welfare.minCoeff());
      ++next_cp;
    }
  }

  trace.final_welfare = state.welfare;
  trace.rates = (state.welfare - trace.initial_welfare) / static_cast<double>(horizon);
  for (int i = 0; i < model.n; ++i)
    if (share[i] >= 0.95 * static_cast<double>(window)) trace.winners.push_back(i);
  return trace;
}

}  // namespace

TrajectoryResult run_trajectory(const ExperimentConfig& cfg, const PolicySpec& policy,
                                std::uint64_t seed) {
  validate(cfg);
  TrajectoryResult result;
  result.policy = policy;
  result.seed = seed;
  result.checkpoints = effective_checkpoints(cfg);
  result.replications.resize(cfg.replications);

  parallel_for(cfg.replications, cfg.jobs, [&](int r) {
    result.replications[r] = simulate_replication(cfg, policy, result.checkpoints,
                                                  derive_seed(seed, static_cast<std::uint64_t>(r)));
  });

  const std::size_t k = result.checkpoints.size();
  result.mean_welfare.assign(k, 0.0);
  result.std_welfare.assign(k, 0.0);
  std::vector<double> column(result.replications.size());
  for (std::size_t c = 0; c < k; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < column.size(); ++r) {
      column[r] = result.replications[r].social_welfare[c];
      sum += column[r];
    }
    result.mean_welfare[c] = sum / static_cast<double>(column.size());
    result.std_welfare[c] = sample_sd(column, result.mean_welfare[c]);
  }
  return result;
}

const PolicyRun& Comparison::at(std::string_view label) const {
  for (const auto& run : runs)
    if (run.label == label) return run;
  throw std::out_of_range("no policy run labelled " + std::string(label));
}

std::optional<RatePrediction> predicted_for(const PolicySpec& policy, const BoundSet& bounds) {
  const BoundSet b = is_proportional(policy.kind) ? bounds.with_budget(1) : bounds;
  try {
    return predicted_rates(family_of(policy.kind), b);
  } catch (const IndeterminateRegimeError&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Comparison compare_policies(const ExperimentConfig& cfg) {
  validate(cfg);
  Comparison out;
  out.experiment_id = cfg.id;
  for (const auto& policy : cfg.policies) {
    PolicyRun run;
    run.label = label(policy);
    run.policy = policy;
    run.result = run_trajectory(cfg, policy, cfg.seed);
    run.predicted = predicted_for(policy, cfg.bounds);
    out.runs.push_back(std::move(run));
  }
  return out;
}

}  // namespace wdl
