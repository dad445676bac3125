#include "wdl/presets.hpp"

namespace wdl::presets {

namespace {

constexpr double kFLo = 3.0;
constexpr double kFHi = 4.0;
constexpr double kGLo = 0.2;
constexpr double kGHi = 0.5;

ExperimentConfig base(const char* id, int n, int budget) {
  ExperimentConfig cfg;
  cfg.id = id;
  cfg.bounds = BoundSet::uniform(n, budget, kFLo, kFHi, kGLo, kGHi);
  cfg.noise = NoiseSpec::capped_gaussian(0.5);
  cfg.horizon = 3000;
  cfg.replications = 30;
  cfg.seed = 20240607;
  return cfg;
}

}  // namespace

ExperimentConfig survival() {
  ExperimentConfig cfg = base("survival", 50, 10);
  cfg.policies = {PolicySpec::of(PolicyKind::kMinU),  PolicySpec::of(PolicyKind::kMaxU),
                  PolicySpec::of(PolicyKind::kMaxG),  PolicySpec::of(PolicyKind::kMaxF),
                  PolicySpec::of(PolicyKind::kMaxFG), PolicySpec::of(PolicyKind::kRandom)};
  return cfg;
}

ExperimentConfig ruin() {
  ExperimentConfig cfg = base("ruin", 50, 1);
  cfg.policies = {PolicySpec::of(PolicyKind::kMinU), PolicySpec::of(PolicyKind::kMaxU)};
  return cfg;
}

ExperimentConfig proportional() {
  ExperimentConfig cfg = base("proportional", 5, 1);
  cfg.curves.identical_curves = true;
  cfg.policies = {PolicySpec::of(PolicyKind::kPropMaxU), PolicySpec::of(PolicyKind::kPropMinU)};
  return cfg;
}

ExperimentConfig diminishing_returns() {
  ExperimentConfig cfg = base("diminishing-returns", 50, 10);
  cfg.curves.identical_curves = true;
  cfg.curves.f_knots = std::pair{0.0, 20.0};
  cfg.curves.g_knots = std::pair{0.0, 20.0};
  cfg.curves.f_reversal = 15.0;
  cfg.replications = 50;
  cfg.policies = {PolicySpec::of(PolicyKind::kMinU), PolicySpec::of(PolicyKind::kMaxFG)};
  return cfg;
}

ExperimentConfig grid() {
  ExperimentConfig cfg = base("grid", 50, 10);
  cfg.horizon = 20000;
  cfg.replications = 20;
  cfg.policies = {PolicySpec::of(PolicyKind::kMinU), PolicySpec::of(PolicyKind::kMaxU)};
  return cfg;
}

SweepConfig sweep() {
  // A smaller budget share than the other presets (M = 5, g+ = 0.25) keeps
  // min-U from pulling ahead within the first ten steps.
  constexpr double kSweepGHi = 0.25;
  SweepConfig cfg;
  cfg.b_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  cfg.sigma_values = {0.0, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12, 0.14};
  cfg.g_hi = kSweepGHi;
  cfg.f_lo = kFLo;
  cfg.f_hi = kFHi;
  cfg.base = base("sweep", 50, 5);
  cfg.base.bounds = BoundSet::uniform(50, 5, kFLo, kFHi, 0.5 * kSweepGHi, kSweepGHi);
  cfg.replications = 20;
  cfg.horizon = 2000;
  cfg.early_checkpoint = 10;
  cfg.seed = 20240607;
  return cfg;
}

BoundSet check_example() { return BoundSet::uniform(4, 1, kFLo, kFHi, kGLo, kGHi); }

}  // namespace wdl::presets
