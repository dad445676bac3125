#pragma once

#include <cstdint>
#include <vector>

#include "wdl/rng.hpp"

namespace wdl {

/// Finite distribution over integer increments Z.
struct IncrementDistribution {
  std::vector<int> values;
  std::vector<double> probabilities;

  /// Z = +1 with probability p, -1 otherwise.
  static IncrementDistribution plus_minus_one(double p);

  double mean() const;
  bool has_negative_support() const;
};

void validate(const IncrementDistribution& dist);

/// phi(r) = E[exp(-r Z)].
double exponential_moment(const IncrementDistribution& dist, double r);

struct AdjustmentResult {
  double r_star = 0.0;
  double residual = 0.0;  // |phi(r*) - 1|
  int iterations = 0;
};

/// Positive root of phi(r) = 1. The right bracket end starts at 1 and doubles
/// until phi exceeds 1; bisection then shrinks the bracket until phi(r*) is
/// within 1e-10 of 1 (or the bracket cannot shrink further).
///
/// Throws AdjustmentError(kRuinImpossible) without negative support and
/// AdjustmentError(kNoPositiveRoot) when E[Z] <= 0.
AdjustmentResult adjustment_coefficient(const IncrementDistribution& dist);

/// exp(-r* u), the Lundberg bound on the ultimate ruin probability from u.
double lundberg_bound(double u, double r_star);

struct RuinEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t ruined = 0;
  std::int64_t trials = 0;
};

/// Fraction of `trials` random walks X_0 = u, X_t = X_{t-1} + Z_t that reach
/// X_t <= 0 for some 1 <= t <= horizon.
RuinEstimate estimate_ruin_probability(const IncrementDistribution& dist, double u,
                                       std::int64_t horizon, std::int64_t trials, Rng& rng);

}  // namespace wdl
