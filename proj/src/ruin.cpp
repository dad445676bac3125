#include "wdl/ruin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "wdl/errors.hpp"

namespace wdl {

IncrementDistribution IncrementDistribution::plus_minus_one(double p) {
  return {{1, -1}, {p, 1.0 - p}};
}

double IncrementDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) m += probabilities[k] * values[k];
  return m;
}

bool IncrementDistribution::has_negative_support() const {
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] < 0 && probabilities[k] > 0.0) return true;
  return false;
}

void validate(const IncrementDistribution& dist) {
  if (dist.values.empty() || dist.values.size() != dist.probabilities.size())
    throw std::invalid_argument("increment distribution needs matching, non-empty support");
  double total = 0.0;
  for (double p : dist.probabilities) {
    if (!(p >= 0.0)) throw std::invalid_argument("increment probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("increment probabilities must sum to 1");
}

double exponential_moment(const IncrementDistribution& dist, double r) {
  double phi = 0.0;
  for (std::size_t k = 0; k < dist.values.size(); ++k)
    phi += dist.probabilities[k] * std::exp(-r * dist.values[k]);
  return phi;
}

AdjustmentResult adjustment_coefficient(const IncrementDistribution& dist) {
  validate(dist);
  if (!dist.has_negative_support())
    throw AdjustmentError(AdjustmentError::Reason::kRuinImpossible,
                          "increments have no negative support; ruin is impossible");
  if (!(dist.mean() > 0.0))
    throw AdjustmentError(AdjustmentError::Reason::kNoPositiveRoot,
                          "increments have non-positive drift; no positive adjustment coefficient");

  // phi is convex with phi(0) = 1 and phi'(0) = -E[Z] < 0, so phi < 1 on (0, r*)
  // and phi > 1 beyond r*.
  constexpr double kTolerance = 1e-10;
  AdjustmentResult out;
  double lo = 0.0;
  double hi = 1.0;
  while (exponential_moment(dist, hi) <= 1.0) {
    lo = hi;
    hi *= 2.0;
    ++out.iterations;
    if (!std::isfinite(hi)) throw std::runtime_error("adjustment coefficient bracket diverged");
  }

  double mid = 0.5 * (lo + hi);
  double residual = std::abs(exponential_moment(dist, mid) - 1.0);
  while (true) {
    ++out.iterations;
    const double phi = exponential_moment(dist, mid);
    residual = std::abs(phi - 1.0);
    if ((residual <= kTolerance && hi - lo <= 1e-12 * hi) || out.iterations > 2000) break;
    if (phi < 1.0)
      lo = mid;
    else
      hi = mid;
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
    mid = next;
  }
  out.r_star = mid;
  out.residual = residual;
  return out;
}

double lundberg_bound(double u, double r_star) {
  if (!(u > 0.0)) throw std::domain_error("lundberg_bound: u must be positive");
  if (!(r_star > 0.0)) throw std::domain_error("lundberg_bound: r* must be positive");
  return std::exp(-r_star * u);
}

RuinEstimate estimate_ruin_probability(const IncrementDistribution& dist, double u,
                                       std::int64_t horizon, std::int64_t trials, Rng& rng) {
  validate(dist);
  if (horizon < 1 || trials < 1) throw std::invalid_argument("horizon and trials must be >= 1");

  // Inverse-CDF lookup on raw 64-bit draws: one engine call per step.
  std::vector<std::uint64_t> thresholds;
  std::vector<int> steps;
  double acc = 0.0;
  constexpr double kScale = 18446744073709551616.0;  // 2^64
  for (std::size_t k = 0; k < dist.values.size(); ++k) {
    if (dist.probabilities[k] <= 0.0) continue;
    acc += dist.probabilities[k];
    const double edge = std::min(acc, 1.0) * kScale;
    thresholds.push_back(edge >= kScale ? std::numeric_limits<std::uint64_t>::max()
                                        : static_cast<std::uint64_t>(edge));
    steps.push_back(dist.values[k]);
  }
  thresholds.back() = std::numeric_limits<std::uint64_t>::max();
  const std::size_t last = steps.size() - 1;

  RuinEstimate out;
  out.trials = trials;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    double x = u;
    for (std::int64_t t = 0; t < horizon; ++t) {
      const std::uint64_t draw = rng();
      // Branch-free bucket lookup: the walk direction is a coin flip, so a
      // data-dependent branch here mispredicts half the time.
      std::size_t k = 0;
      for (std::size_t j = 0; j < last; ++j) k += draw >= thresholds[j];
      x += steps[k];
      if (x <= 0.0) {
        ++out.ruined;
        break;
      }
    }
  }
  const double p = static_cast<double>(out.ruined) / static_cast<double>(trials);
  out.estimate = p;
  out.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return out;
}

}  // namespace wdl
