#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "wdl/analysis.hpp"
#include "wdl/model.hpp"
#include "wdl/noise.hpp"
#include "wdl/policy.hpp"

namespace wdl {

enum class CurveTrend { kIncreasing, kDecreasing, kConstant };

std::string_view to_string(CurveTrend trend) noexcept;
std::optional<CurveTrend> parse_curve_trend(std::string_view name) noexcept;

/// How per-individual curves are generated from the bounds.
///
/// Knots are drawn uniformly from (0, knot_range] per individual (sorted, with
/// a redraw on equality) unless fixed knots are given. With `increasing_effect`
/// set, knots of an increasing f and decreasing g are redrawn until f + g is
/// non-decreasing. Constant trends use the midpoint of the bounds.
struct CurveTemplate {
  CurveShape shape = CurveShape::kPiecewiseLinear;
  CurveTrend f_trend = CurveTrend::kIncreasing;
  CurveTrend g_trend = CurveTrend::kDecreasing;
  double knot_range = 20.0;
  bool increasing_effect = true;
  std::optional<std::pair<double, double>> f_knots;
  std::optional<std::pair<double, double>> g_knots;
  bool identical_curves = false;
  std::optional<double> f_reversal;
};

/// Synthetic initial welfare: normal draws clamped to [min, max].
struct CappedNormalWelfare {
  double mean = 10.0;
  double sd = 5.0;
  double min = 0.0;
  double max = 20.0;
};

using InitialWelfare = std::variant<CappedNormalWelfare, Eigen::VectorXd>;

struct ExperimentConfig {
  std::string id = "experiment";
  BoundSet bounds;  // carries N and M
  CurveTemplate curves;
  NoiseSpec noise = NoiseSpec::capped_gaussian(0.5);
  InitialWelfare initial = CappedNormalWelfare{};
  std::vector<PolicySpec> policies;
  std::int64_t horizon = 6000;
  int replications = 100;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> checkpoints;  // empty: default_checkpoints(horizon)
  int jobs = 1;
};

void validate(const ExperimentConfig& cfg);

/// t = 10 (when within the horizon) plus twenty evenly spaced steps ending at T.
std::vector<std::int64_t> default_checkpoints(std::int64_t horizon);
std::vector<std::int64_t> effective_checkpoints(const ExperimentConfig& cfg);

PopulationModel build_model(const ExperimentConfig& cfg, Rng& rng);
Eigen::VectorXd draw_initial_welfare(const ExperimentConfig& cfg, Rng& rng);

/// mean_i (U_i(t) - U_i(0)) / t.
double finite_time_welfare(const Eigen::VectorXd& welfare_now,
                           const Eigen::VectorXd& welfare_start, std::int64_t t);

struct ReplicationTrace {
  std::uint64_t seed = 0;
  std::vector<double> social_welfare;  // one per checkpoint
  std::vector<double> welfare_gap;     // max_i U_i - min_i U_i, one per checkpoint
  Eigen::VectorXd initial_welfare;
  Eigen::VectorXd final_welfare;
  Eigen::VectorXd rates;  // (U_i(T) - U_i(0)) / T
  /// Indices allocated in at least 95% of the final 10% of steps.
  std::vector<int> winners;
  /// Whether the allocated set (argmax set for proportional policies) never
  /// changed over the final 10% of steps.
  bool winners_stable = false;
};

struct TrajectoryResult {
  PolicySpec policy;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> mean_welfare;  // over replications
  std::vector<double> std_welfare;   // sample standard deviation
  std::vector<ReplicationTrace> replications;

  std::size_t checkpoint_index(std::int64_t t) const;
  double mean_at(std::int64_t t) const { return mean_welfare[checkpoint_index(t)]; }
  double se_at(std::int64_t t) const;
  double final_mean() const { return mean_welfare.back(); }
  double final_se() const { return se_at(checkpoints.back()); }
};

/// sqrt(se_a^2 + se_b^2) at checkpoint t.
double pooled_standard_error(const TrajectoryResult& a, const TrajectoryResult& b,
                             std::int64_t t);

/// Simulates cfg.replications trajectories of one policy. Replication r draws
/// its curves, initial welfare, noise and policy randomness from separate
/// streams derived from (seed, r), so two policies run with the same seed see
/// identical models and noise.
TrajectoryResult run_trajectory(const ExperimentConfig& cfg, const PolicySpec& policy,
                                std::uint64_t seed);

struct PolicyRun {
  std::string label;
  PolicySpec policy;
  TrajectoryResult result;
  std::optional<RatePrediction> predicted;
};

struct Comparison {
  std::string experiment_id;
  std::vector<PolicyRun> runs;

  const PolicyRun& at(std::string_view label) const;
};

/// Closed-form prediction overlay for a policy, or nullopt when none applies.
/// Proportional policies are evaluated with a unit budget.
std::optional<RatePrediction> predicted_for(const PolicySpec& policy, const BoundSet& bounds);

Comparison compare_policies(const ExperimentConfig& cfg);

}  // namespace wdl
