#include <doctest.h>

#include <cmath>

#include "wdl/errors.hpp"
#include "wdl/grid.hpp"

using namespace wdl;

namespace {

ExperimentConfig small_base() {
  ExperimentConfig cfg;
  cfg.bounds = BoundSet::uniform(6, 2, 3.0, 4.0, 0.2, 0.5);
  cfg.policies = {PolicySpec::of(PolicyKind::kMinU), PolicySpec::of(PolicyKind::kMaxU)};
  cfg.horizon = 300;
  cfg.replications = 4;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST_CASE("grid covers every trend pair in f-major order") {
  const auto grid = monotonicity_grid(small_base());
  int k = 0;
  for (auto f : kGridTrends)
    for (auto g : kGridTrends) {
      CHECK(grid[k].f_trend == f);
      CHECK(grid[k].g_trend == g);
      CHECK(&grid_cell(grid, f, g) == &grid[k]);
      CHECK(grid[k].pooled_se >= 0.0);
      ++k;
    }
}

TEST_CASE("grid classification follows the tie rule") {
  const auto grid = monotonicity_grid(small_base(), 3.0);
  for (const auto& c : grid) {
    const double diff = c.min_u_mean - c.max_u_mean;
    if (std::abs(diff) <= 3.0 * c.pooled_se)
      CHECK(c.outcome == GridOutcome::kTie);
    else
      CHECK(c.outcome == (diff > 0 ? GridOutcome::kRawlsian : GridOutcome::kUtilitarian));
  }
  // With both curves constant the two policies have the same expected drift.
  CHECK(grid_cell(grid, CurveTrend::kConstant, CurveTrend::kConstant).outcome == GridOutcome::kTie);
}

TEST_CASE("grid preconditions") {
  auto cfg = small_base();
  cfg.bounds.g_hi[0] = 0.45;
  CHECK_THROWS_AS(monotonicity_grid(cfg), StructuralError);
  cfg = small_base();
  cfg.bounds = BoundSet::uniform(50, 1, 3.0, 4.0, 0.2, 0.5);
  CHECK_THROWS_AS(monotonicity_grid(cfg), StructuralError);
  CHECK_THROWS_AS(monotonicity_grid(small_base(), -1.0), StructuralError);
}
