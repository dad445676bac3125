#include <doctest.h>

#include <cmath>

#include "wdl/errors.hpp"
#include "wdl/ruin.hpp"

using namespace wdl;

namespace {

AdjustmentError::Reason adjustment_failure(const IncrementDistribution& d) {
  try {
    adjustment_coefficient(d);
  } catch (const AdjustmentError& e) {
    return e.reason();
  }
  FAIL("expected AdjustmentError");
  return AdjustmentError::Reason::kNoPositiveRoot;
}

}  // namespace

TEST_CASE("adjustment coefficient of a biased +/-1 walk is log(p/q)") {
  const auto r = adjustment_coefficient(IncrementDistribution::plus_minus_one(0.6));
  CHECK(r.r_star == doctest::Approx(std::log(1.5)).epsilon(1e-8));
  CHECK(r.residual <= 1e-10);
  for (double p : {0.51, 0.55, 0.7, 0.9, 0.99}) {
    const auto rp = adjustment_coefficient(IncrementDistribution::plus_minus_one(p));
    CHECK(std::abs(rp.r_star - std::log(p / (1 - p))) <= 1e-8);
  }
}

TEST_CASE("adjustment coefficient of a +2/-1 walk is the log golden ratio") {
  const IncrementDistribution d{{2, -1}, {0.5, 0.5}};
  const auto r = adjustment_coefficient(d);
  CHECK(std::abs(r.r_star - std::log((1.0 + std::sqrt(5.0)) / 2.0)) <= 1e-8);
  CHECK(r.r_star == doctest::Approx(0.481212).epsilon(1e-6));
  CHECK(std::abs(exponential_moment(d, r.r_star) - 1.0) <= 1e-10);
}

TEST_CASE("adjustment coefficient failure modes") {
  CHECK(adjustment_failure(IncrementDistribution::plus_minus_one(0.5)) ==
        AdjustmentError::Reason::kNoPositiveRoot);
  CHECK(adjustment_failure(IncrementDistribution::plus_minus_one(0.3)) ==
        AdjustmentError::Reason::kNoPositiveRoot);
  CHECK(adjustment_failure(IncrementDistribution{{1, 2}, {0.5, 0.5}}) ==
        AdjustmentError::Reason::kRuinImpossible);
}

TEST_CASE("increment distribution validation") {
  CHECK_THROWS_AS(validate(IncrementDistribution{{1, -1}, {0.5, 0.6}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(IncrementDistribution{{1}, {0.5, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(IncrementDistribution{{}, {}}), std::invalid_argument);
  CHECK_NOTHROW(validate(IncrementDistribution::plus_minus_one(0.6)));
  CHECK(IncrementDistribution::plus_minus_one(0.6).mean() == doctest::Approx(0.2));
}

TEST_CASE("Lundberg bound") {
  CHECK(lundberg_bound(5.0, std::log(1.5)) == doctest::Approx(std::pow(2.0 / 3.0, 5)));
  CHECK(lundberg_bound(1.0, 0.3) == doctest::Approx(std::exp(-0.3)));
  CHECK_THROWS_AS(lundberg_bound(-1.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(lundberg_bound(1.0, 0.0), std::domain_error);
}

TEST_CASE("Monte-Carlo ruin matches the gambler's-ruin formula") {
  // For a +/-1 walk the ultimate ruin probability from u is (q/p)^u exactly.
  Rng rng(31);
  for (int u : {1, 3, 5}) {
    const auto est =
        estimate_ruin_probability(IncrementDistribution::plus_minus_one(0.6), u, 5000, 20000, rng);
    const double exact = std::pow(2.0 / 3.0, u);
    CHECK(est.trials == 20000);
    CHECK(std::abs(est.estimate - exact) < 4.0 * std::sqrt(exact * (1 - exact) / 20000));
    CHECK(est.standard_error == doctest::Approx(std::sqrt(est.estimate * (1 - est.estimate) / 20000)));
  }
}

TEST_CASE("Monte-Carlo ruin edge cases") {
  Rng rng(32);
  CHECK(estimate_ruin_probability(IncrementDistribution::plus_minus_one(0.6), 200, 100, 1000, rng)
            .estimate == 0.0);
  CHECK(estimate_ruin_probability(IncrementDistribution{{1}, {1.0}}, 1, 1000, 1000, rng).estimate ==
        0.0);
  CHECK(estimate_ruin_probability(IncrementDistribution{{-1}, {1.0}}, 3, 1000, 100, rng).estimate ==
        1.0);
}

TEST_CASE("Monte-Carlo ruin is reproducible from the seed") {
  Rng a(5), b(5);
  const auto d = IncrementDistribution{{2, -1}, {0.5, 0.5}};
  CHECK(estimate_ruin_probability(d, 2, 500, 2000, a).ruined ==
        estimate_ruin_probability(d, 2, 500, 2000, b).ruined);
}
