#include "wdl/analysis.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "wdl/errors.hpp"

namespace wdl {

BoundSet BoundSet::uniform(int n, int budget, double f_lo, double f_hi, double g_lo,
                           double g_hi) {
  BoundSet b;
  b.f_lo = Eigen::VectorXd::Constant(n, f_lo);
  b.f_hi = Eigen::VectorXd::Constant(n, f_hi);
  b.g_lo = Eigen::VectorXd::Constant(n, g_lo);
  b.g_hi = Eigen::VectorXd::Constant(n, g_hi);
  b.budget = budget;
  return b;
}

bool BoundSet::is_uniform() const noexcept {
  if (n() == 0) return true;
  auto flat = [](const Eigen::VectorXd& v) { return (v.array() == v[0]).all(); };
  return flat(f_lo) && flat(f_hi) && flat(g_lo) && flat(g_hi);
}

BoundSet BoundSet::with_budget(int m) const {
  BoundSet b = *this;
  b.budget = m;
  return b;
}

void validate(const BoundSet& b) {
  const int n = b.n();
  if (n < 1) throw StructuralError("bound set is empty");
  if (b.f_hi.size() != n || b.g_lo.size() != n || b.g_hi.size() != n)
    throw StructuralError("bound vectors differ in length");
  if (b.budget < 1 || b.budget > n) throw StructuralError("budget must lie in [1, n]");
  auto positive = [](const Eigen::VectorXd& v) { return (v.array() > 0.0).all() && v.allFinite(); };
  if (!positive(b.f_lo) || !positive(b.f_hi) || !positive(b.g_lo) || !positive(b.g_hi))
    throw std::domain_error("all bounds must be finite and positive");
  if ((b.f_lo.array() > b.f_hi.array()).any() || (b.g_lo.array() > b.g_hi.array()).any())
    throw std::invalid_argument("bounds must satisfy f- <= f+ and g- <= g+");
}

BoundSet bounds_of(const PopulationModel& model) {
  validate(model);
  BoundSet b;
  b.budget = model.budget;
  b.f_lo.resize(model.n);
  b.f_hi.resize(model.n);
  b.g_lo.resize(model.n);
  b.g_hi.resize(model.n);
  for (int i = 0; i < model.n; ++i) {
    std::tie(b.f_lo[i], b.f_hi[i]) = curve_bounds(model.return_curves[i]);
    std::tie(b.g_lo[i], b.g_hi[i]) = curve_bounds(model.decay_curves[i]);
  }
  return b;
}

bool survival_holds(const BoundSet& b) {
  validate(b);
  return zeta(b.f_lo, b.g_hi, b.budget) > 0.0;
}

bool ruin_holds(const BoundSet& b) {
  validate(b);
  return zeta(b.f_hi, b.g_lo, b.budget) < 0.0;
}

Regime classify_regime(const BoundSet& b) {
  if (survival_holds(b)) return Regime::kSurvival;
  if (ruin_holds(b)) return Regime::kRuin;
  return Regime::kIndeterminate;
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::kSurvival: return "survival";
    case Regime::kRuin: return "ruin";
    case Regime::kIndeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string_view to_string(PolicyFamily family) noexcept {
  switch (family) {
    case PolicyFamily::kRawlsian: return "rawlsian";
    case PolicyFamily::kUtilitarian: return "utilitarian";
    case PolicyFamily::kRandom: return "random";
  }
  return "random";
}

PolicyFamily family_of(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::kMinU:
    case PolicyKind::kMaxG:
    case PolicyKind::kPropMinU:
      return PolicyFamily::kRawlsian;
    case PolicyKind::kRandom:
      return PolicyFamily::kRandom;
    default:
      return PolicyFamily::kUtilitarian;
  }
}

RatePrediction predicted_rates(PolicyFamily family, const BoundSet& b,
                               const std::optional<std::vector<int>>& winners) {
  validate(b);
  const int n = b.n();
  const int m = b.budget;
  const double treated = static_cast<double>(m) / n;
  const double untreated = static_cast<double>(n - m) / n;

  RatePrediction out;
  out.family = family;
  out.regime = classify_regime(b);

  switch (family) {
    case PolicyFamily::kRawlsian: {
      double r = 0.0;
      if (out.regime == Regime::kSurvival)
        r = zeta(b.f_hi, b.g_lo, m);
      else if (out.regime == Regime::kRuin)
        r = zeta(b.f_lo, b.g_hi, m);
      else
        throw IndeterminateRegimeError("neither survival nor ruin holds; Rawlsian rate undefined");
      out.rates = Eigen::VectorXd::Constant(n, r);
      break;
    }
    case PolicyFamily::kUtilitarian: {
      std::optional<std::vector<int>> j = winners;
      if (!j && m == n) {
        j.emplace(n);
        for (int i = 0; i < n; ++i) (*j)[i] = i;
      }
      if (j) {
        if (static_cast<int>(j->size()) != m)
          throw std::invalid_argument("winner set must contain exactly M individuals");
        Eigen::VectorXd r = -b.g_hi;
        std::vector<char> seen(n, 0);
        for (int i : *j) {
          if (i < 0 || i >= n) throw std::out_of_range("winner index out of range");
          if (seen[i]) throw std::invalid_argument("winner set has duplicates");
          seen[i] = 1;
          r[i] = b.f_hi[i];
        }
        out.rates = r;
        out.winners = std::move(j);
      } else {
        if (!b.is_uniform())
          throw std::invalid_argument(
              "utilitarian rates for heterogeneous bounds need an explicit winner set");
        out.average = treated * b.f_hi[0] - untreated * b.g_hi[0];
        return out;
      }
      break;
    }
    case PolicyFamily::kRandom: {
      if (out.regime != Regime::kSurvival)
        throw IndeterminateRegimeError("random-policy rate is only defined under survival");
      out.rates = (treated * b.f_hi - untreated * b.g_lo).eval();
      break;
    }
  }
  out.average = out.rates->mean();
  return out;
}

Eigen::VectorXd welfare_weights(const BoundSet& b, WeightVariant variant) {
  validate(b);
  Eigen::VectorXd w = variant == WeightVariant::kBar
                          ? (b.f_lo + b.g_hi).cwiseInverse().eval()
                          : (b.f_hi + b.g_lo).cwiseInverse().eval();
  return w / w.sum();
}

}  // namespace wdl
