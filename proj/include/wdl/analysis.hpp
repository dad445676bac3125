#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wdl/model.hpp"
#include "wdl/policy.hpp"

namespace wdl {

/// Per-individual bound quadruples (f-_i, f+_i, g-_i, g+_i) plus the budget M.
struct BoundSet {
  Eigen::VectorXd f_lo, f_hi, g_lo, g_hi;
  int budget = 1;

  static BoundSet uniform(int n, int budget, double f_lo, double f_hi, double g_lo, double g_hi);

  int n() const noexcept { return static_cast<int>(f_lo.size()); }
  /// True iff every individual carries the same quadruple.
  bool is_uniform() const noexcept;
  BoundSet with_budget(int m) const;
};

void validate(const BoundSet& b);

/// Reads the stored infimum/supremum of every curve in the model.
BoundSet bounds_of(const PopulationModel& model);

/// (M - sum_i y_i / (x_i + y_i)) * (sum_j 1 / (x_j + y_j))^-1.
///
/// This is the average drift of the weighted welfare sum with weights
/// proportional to 1 / (x_i + y_i) when exactly M individuals are treated;
/// its sign separates the survival and ruin regimes.
template <typename DerivedX, typename DerivedY>
double zeta(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y, int m) {
  if (x.size() != y.size()) throw std::invalid_argument("zeta: x and y lengths differ");
  const auto n = x.size();
  if (n == 0) throw std::invalid_argument("zeta: empty input");
  if (m < 1 || m > n) throw std::invalid_argument("zeta: M must lie in [1, N]");
  if ((x.array() <= 0.0).any() || (y.array() <= 0.0).any())
    throw std::domain_error("zeta: entries must be positive");
  double decay_share = 0.0;
  double inv_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = x[i] + y[i];
    decay_share += y[i] / s;
    inv_sum += 1.0 / s;
  }
  return (static_cast<double>(m) - decay_share) / inv_sum;
}

bool survival_holds(const BoundSet& b);
bool ruin_holds(const BoundSet& b);

enum class Regime { kSurvival, kRuin, kIndeterminate };
Regime classify_regime(const BoundSet& b);
std::string_view to_string(Regime regime) noexcept;

enum class PolicyFamily { kRawlsian, kUtilitarian, kRandom };
std::string_view to_string(PolicyFamily family) noexcept;

/// min-U, max-g and proportional min-U are Rawlsian; max-U, max-f, max-fg and
/// proportional max-U are utilitarian.
PolicyFamily family_of(PolicyKind kind) noexcept;

struct RatePrediction {
  PolicyFamily family = PolicyFamily::kRawlsian;
  Regime regime = Regime::kIndeterminate;
  /// Per-individual asymptotic rates; empty when only the average is defined.
  std::optional<Eigen::VectorXd> rates;
  double average = 0.0;
  std::optional<std::vector<int>> winners;
};

/// Closed-form asymptotic growth rates.
///
/// - Rawlsian: zeta(f+, g-) for everyone under survival; zeta(f-, g+) under ruin.
/// - Utilitarian: f+_i for the winner set and -g+_i for everyone else; without a
///   winner set only the uniform-bounds average M/N f+ - (N-M)/N g+ is reported.
/// - Random (survival only): M/N f+_i - (N-M)/N g-_i.
///
/// Throws IndeterminateRegimeError for Rawlsian requests when neither condition
/// holds and for random requests outside survival.
RatePrediction predicted_rates(PolicyFamily family, const BoundSet& b,
                               const std::optional<std::vector<int>>& winners = std::nullopt);

enum class WeightVariant {
  kBar,    // weights proportional to 1 / (f-_i + g+_i)
  kTilde,  // weights proportional to 1 / (f+_i + g-_i)
};

Eigen::VectorXd welfare_weights(const BoundSet& b, WeightVariant variant);

template <typename Derived>
double weighted_welfare(const Eigen::MatrixBase<Derived>& welfare, const BoundSet& b,
                        WeightVariant variant) {
  if (welfare.size() != b.n()) throw std::invalid_argument("weighted_welfare: length mismatch");
  return welfare_weights(b, variant).dot(welfare);
}

}  // namespace wdl
