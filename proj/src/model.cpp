#include "wdl/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wdl/errors.hpp"

namespace wdl {

void validate(const PopulationModel& model) {
  if (model.n < 1) throw StructuralError("population must have at least one individual");
  if (model.budget < 1 || model.budget > model.n)
    throw StructuralError("budget must lie in [1, n], got " + std::to_string(model.budget));
  if (static_cast<int>(model.return_curves.size()) != model.n ||
      static_cast<int>(model.decay_curves.size()) != model.n)
    throw StructuralError("curve count does not match population size");
  for (const auto& c : model.return_curves) validate(c);
  for (const auto& c : model.decay_curves) validate(c);
  validate(model.noise);
}

void validate(const AllocationVector& alloc, int budget) {
  const auto& a = alloc.entries;
  if (alloc.mode == AllocationMode::kInteger) {
    int total = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] != 0.0 && a[i] != 1.0) throw StructuralError("integer allocation entry not in {0,1}");
      total += static_cast<int>(a[i]);
    }
    if (total != budget)
      throw StructuralError("integer allocation sums to " + std::to_string(total) +
                            ", budget is " + std::to_string(budget));
    return;
  }
  if ((a.array() < 0.0).any() || (a.array() > 1.0).any())
    throw StructuralError("proportional allocation entry outside [0,1]");
  if (std::abs(a.sum() - 1.0) > 1e-12) throw StructuralError("proportional allocation must sum to 1");
}

namespace {

void check_lengths(const PopulationState& state, const AllocationVector& alloc,
                   const PopulationModel& model) {
  if (state.welfare.size() != model.n || alloc.entries.size() != model.n)
    throw StructuralError("state, allocation and model lengths differ");
  if (static_cast<int>(model.return_curves.size()) != model.n ||
      static_cast<int>(model.decay_curves.size()) != model.n)
    throw StructuralError("curve count does not match population size");
}

}  // namespace

Eigen::VectorXd expected_increment(const PopulationState& state, const AllocationVector& alloc,
                                   const PopulationModel& model) {
  check_lengths(state, alloc, model);
  Eigen::VectorXd drift(model.n);
  for (int i = 0; i < model.n; ++i) {
    const double u = state.welfare[i];
    const double a = alloc.entries[i];
    drift[i] = a * eval_curve(model.return_curves[i], u) -
               (1.0 - a) * eval_curve(model.decay_curves[i], u);
  }
  return drift;
}

void advance_population(PopulationState& state, const AllocationVector& alloc,
                        const PopulationModel& model, NoiseSampler& noise, Rng& rng) {
  check_lengths(state, alloc, model);
  for (int i = 0; i < model.n; ++i) {
    const double u = state.welfare[i];
    const double a = alloc.entries[i];
    double du = 0.0;
    if (a != 0.0) du += a * eval_curve(model.return_curves[i], u);
    if (a != 1.0) du -= (1.0 - a) * eval_curve(model.decay_curves[i], u);
    state.welfare[i] = u + du + noise(rng);
  }
  ++state.t;
}

PopulationState step_population(const PopulationState& state, const AllocationVector& alloc,
                                const PopulationModel& model, Rng& rng) {
  validate(alloc, model.budget);
  PopulationState next = state;
  NoiseSampler noise(model.noise);
  advance_population(next, alloc, model, noise, rng);
  return next;
}

double treatment_effect(const PopulationModel& model, int i, double u) {
  if (i < 0 || i >= model.n || i >= static_cast<int>(model.return_curves.size()) ||
      i >= static_cast<int>(model.decay_curves.size()))
    throw std::out_of_range("individual index out of range: " + std::to_string(i));
  return eval_curve(model.return_curves[i], u) + eval_curve(model.decay_curves[i], u);
}

}  // namespace wdl
