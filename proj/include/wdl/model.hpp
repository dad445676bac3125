#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wdl/curve.hpp"
#include "wdl/noise.hpp"
#include "wdl/rng.hpp"

namespace wdl {

/// One instance of the welfare dynamics: per-individual return curves f_i,
/// decay curves g_i, additive noise, and an intervention budget M.
struct PopulationModel {
  int n = 0;
  int budget = 1;
  std::vector<ResponseCurve> return_curves;
  std::vector<ResponseCurve> decay_curves;
  NoiseSpec noise;
};

void validate(const PopulationModel& model);

struct PopulationState {
  std::int64_t t = 0;
  Eigen::VectorXd welfare;
};

enum class AllocationMode { kInteger, kProportional };

struct AllocationVector {
  Eigen::VectorXd entries;
  AllocationMode mode = AllocationMode::kInteger;
};

/// Integer mode: entries in {0, 1} summing to `budget`.
/// Proportional mode: entries in [0, 1] summing to 1 within 1e-12.
void validate(const AllocationVector& alloc, int budget);

/// a_i f_i(U_i) - (1 - a_i) g_i(U_i) for every individual.
Eigen::VectorXd expected_increment(const PopulationState& state, const AllocationVector& alloc,
                                   const PopulationModel& model);

/// U_i(t+1) = U_i(t) + a_i f_i(U_i(t)) - (1 - a_i) g_i(U_i(t)) + xi_i.
/// One perturbation is drawn per individual, in index order, regardless of the
/// allocation, so trajectories under different policies share noise when they
/// share an rng state.
PopulationState step_population(const PopulationState& state, const AllocationVector& alloc,
                                const PopulationModel& model, Rng& rng);

/// In-place variant used by the simulation loop; `noise` carries sampler state.
void advance_population(PopulationState& state, const AllocationVector& alloc,
                        const PopulationModel& model, NoiseSampler& noise, Rng& rng);

/// f_i(u) + g_i(u).
double treatment_effect(const PopulationModel& model, int i, double u);

}  // namespace wdl
