#include "wdl/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wdl {

NoiseSpec NoiseSpec::none() { return capped_gaussian(0.0); }

NoiseSpec NoiseSpec::capped_gaussian(double sigma, double cap) {
  NoiseSpec s;
  s.kind = NoiseKind::kCappedGaussian;
  s.sigma = sigma;
  s.cap = cap;
  return s;
}

NoiseSpec NoiseSpec::integer_lattice(std::map<int, double> mass, double z_star,
                                     double two_sided_mass) {
  NoiseSpec s;
  s.kind = NoiseKind::kIntegerLattice;
  int reach = 0;
  for (const auto& [k, p] : mass) reach = std::max(reach, std::abs(k));
  s.cap = std::max(reach, 1);
  s.lattice_mass = std::move(mass);
  s.z_star = z_star;
  s.two_sided_mass = two_sided_mass;
  return s;
}

bool NoiseSpec::is_zero() const noexcept {
  if (kind == NoiseKind::kCappedGaussian) return sigma == 0.0;
  for (const auto& [k, p] : lattice_mass)
    if (k != 0 && p > 0.0) return false;
  return true;
}

void validate(const NoiseSpec& spec) {
  if (!(spec.cap > 0.0)) throw std::invalid_argument("noise cap must be positive");
  if (!(spec.z_star > 0.0)) throw std::invalid_argument("noise z_star must be positive");
  if (!(spec.two_sided_mass > 0.0 && spec.two_sided_mass < 1.0))
    throw std::invalid_argument("noise two-sided mass l must lie in (0, 1)");

  if (spec.kind == NoiseKind::kCappedGaussian) {
    if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma))
      throw std::invalid_argument("noise sigma must be finite and non-negative");
    return;
  }

  if (spec.lattice_mass.empty()) throw std::invalid_argument("lattice noise needs a mass table");
  double total = 0.0, upper = 0.0, lower = 0.0;
  for (const auto& [k, p] : spec.lattice_mass) {
    if (!(p >= 0.0)) throw std::invalid_argument("lattice probabilities must be non-negative");
    if (std::abs(k) > spec.cap) throw std::invalid_argument("lattice support exceeds the cap");
    total += p;
    if (k >= spec.z_star) upper += p;
    if (k <= -spec.z_star) lower += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("lattice probabilities must sum to 1");
  if (upper < spec.two_sided_mass || lower < spec.two_sided_mass)
    throw std::invalid_argument("lattice noise violates the two-sided mass guarantee");
}

NoiseSampler::NoiseSampler(const NoiseSpec& spec) : spec_(spec) {
  validate(spec_);
  if (spec_.kind == NoiseKind::kIntegerLattice) {
    double acc = 0.0;
    for (const auto& [k, p] : spec_.lattice_mass) {
      if (p <= 0.0) continue;
      acc += p;
      support_.push_back(k);
      cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
  }
}

double NoiseSampler::operator()(Rng& rng) {
  if (spec_.kind == NoiseKind::kCappedGaussian) {
    if (spec_.sigma == 0.0) return 0.0;
    return std::clamp(spec_.sigma * normal_(rng), -spec_.cap, spec_.cap);
  }
  const double u = uniform_(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = std::min<std::size_t>(it - cdf_.begin(), support_.size() - 1);
  return static_cast<double>(support_[idx]);
}

}  // namespace wdl
