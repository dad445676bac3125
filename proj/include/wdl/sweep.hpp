#pragma once

#include <cstdint>
#include <vector>

#include "wdl/analysis.hpp"
#include "wdl/experiment.hpp"
#include "wdl/rng.hpp"

namespace wdl {

/// Heterogeneous-bounds sweep over decay strength b and spread sigma.
/// Population size, budget, curve template, noise and initial welfare come
/// from `base`; its bounds are replaced per replication.
struct SweepConfig {
  std::vector<double> b_values;
  std::vector<double> sigma_values;
  double g_hi = 0.5;
  double f_lo = 3.0;
  double f_hi = 4.0;
  ExperimentConfig base;
  int replications = 20;
  std::int64_t horizon = 2000;
  std::int64_t early_checkpoint = 10;
  std::uint64_t seed = 1;
  int jobs = 1;
};

void validate(const SweepConfig& cfg);

struct SweepCell {
  double b = 1.0;
  double sigma = 0.0;
};

/// Per-individual quadruples drawn as
///   g-_i ~ N(b g+, b^2 s^2), g+_i ~ N(g+, s^2),
///   f-_i ~ N(f-, (f-/g+)^2 s^2), f+_i ~ N(f+, (f+/g+)^2 s^2).
/// A quadruple violating positivity or f-_i <= f+_i, g-_i <= g+_i is redrawn;
/// more than 10^4 consecutive rejections throw InfeasibleCellError.
BoundSet sample_heterogeneous_bounds(const SweepConfig& cfg, SweepCell cell, Rng& rng);

struct SweepResult {
  double b = 1.0;
  double sigma = 0.0;
  double winrate_final = 0.0;  // share of replications where min-U beats max-U at the horizon
  double winrate_early = 0.0;  // same, at the early checkpoint
  int n_reps = 0;
  bool infeasible = false;
};

/// One entry per (b, sigma) pair, b-major. Infeasible cells are reported with
/// `infeasible` set and zero replications.
std::vector<SweepResult> heterogeneity_sweep(const SweepConfig& cfg);

/// Spearman rank correlation with average ranks for ties; 0 when either
/// input is constant.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wdl
