#pragma once

#include "wdl/analysis.hpp"
#include "wdl/experiment.hpp"
#include "wdl/sweep.hpp"

namespace wdl::presets {

/// Uniform bounds f in [3, 4], g in [0.2, 0.5], N = 50, M = 10, sigma = 0.5,
/// T = 3000, R = 30. Satisfies the survival condition.
ExperimentConfig survival();

/// Same bounds with M = 1, which satisfies the ruin condition.
ExperimentConfig ruin();

/// Survival bounds with N = 5 and identical curves for the softmax policies
/// (unit budget).
ExperimentConfig proportional();

/// Identical curves with f reversing above tau = 15, compared by min-U and
/// max-fg over 50 replications.
ExperimentConfig diminishing_returns();

/// Survival preset at a long horizon for the monotonicity grid.
ExperimentConfig grid();

/// 8 x 8 grid over b in [0.1, 0.8] and sigma in [0, 0.14] with 20 replications
/// per cell, N = 50, M = 5, f in [3, 4], g+ = 0.25, T = 2000.
SweepConfig sweep();

/// Uniform f- = 3, f+ = 4, g- = 0.2, g+ = 0.5 with N = 4, M = 1.
BoundSet check_example();

}  // namespace wdl::presets
