#pragma once

#include <map>
#include <random>
#include <vector>

#include "wdl/rng.hpp"

namespace wdl {

enum class NoiseKind { kCappedGaussian, kIntegerLattice };

/// Per-step welfare perturbation. Capped Gaussian draws are clamped to
/// [-cap, cap]; lattice draws take integer values with the given masses.
/// `z_star` and `two_sided_mass` declare the two-sided mass guarantee
/// P(Z >= z*) >= l and P(Z <= -z*) >= l, enforced for the lattice kind.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kCappedGaussian;
  double sigma = 0.0;
  double cap = 5.0;
  std::map<int, double> lattice_mass;
  double z_star = 1.0;
  double two_sided_mass = 0.1;

  static NoiseSpec none();
  static NoiseSpec capped_gaussian(double sigma, double cap = 5.0);
  static NoiseSpec integer_lattice(std::map<int, double> mass, double z_star = 1.0,
                                   double two_sided_mass = 0.1);

  bool is_zero() const noexcept;
};

void validate(const NoiseSpec& spec);

/// Stateful sampler for one noise stream. Not thread-safe; one per trajectory.
class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseSpec& spec);

  double operator()(Rng& rng);

 private:
  NoiseSpec spec_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::vector<int> support_;
  std::vector<double> cdf_;
};

}  // namespace wdl
