#include "wdl/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "wdl/errors.hpp"

namespace wdl {

std::string_view to_string(GridOutcome outcome) noexcept {
  switch (outcome) {
    case GridOutcome::kRawlsian: return "rawlsian";
    case GridOutcome::kUtilitarian: return "utilitarian";
    case GridOutcome::kTie: return "tie";
  }
  return "tie";
}

std::array<GridCell, 9> monotonicity_grid(const ExperimentConfig& base, double tie_se) {
  if (!base.bounds.is_uniform()) throw StructuralError("monotonicity grid needs uniform bounds");
  if (!survival_holds(base.bounds))
    throw StructuralError("monotonicity grid needs the survival condition");
  if (!(tie_se >= 0.0)) throw StructuralError("tie tolerance must be non-negative");

  const std::pair<PolicySpec, PolicySpec> policies{PolicySpec::of(PolicyKind::kMinU), PolicySpec::of(PolicyKind::kMaxU)};
  std::array<GridCell, 9> grid;
  std::size_t k = 0;
  for (CurveTrend f : kGridTrends) {
    for (CurveTrend g : kGridTrends) {
      ExperimentConfig cfg = base;
      cfg.id = base.id + "/f-" + std::string(to_string(f)) + "/g-" + std::string(to_string(g));
      cfg.curves.f_trend = f;
      cfg.curves.g_trend = g;
      cfg.policies = {policies.first, policies.second};
      if (f == CurveTrend::kConstant) {
        const double mid = 0.5 * (base.bounds.f_lo[0] + base.bounds.f_hi[0]);
        cfg.bounds.f_lo.setConstant(mid);
        cfg.bounds.f_hi.setConstant(mid);
      }
      if (g == CurveTrend::kConstant) {
        const double mid = 0.5 * (base.bounds.g_lo[0] + base.bounds.g_hi[0]);
        cfg.bounds.g_lo.setConstant(mid);
        cfg.bounds.g_hi.setConstant(mid);
      }
      const auto rawls = run_trajectory(cfg, policies.first, cfg.seed);
      const auto util = run_trajectory(cfg, policies.second, cfg.seed);
      GridCell& cell = grid[k++];
      cell.f_trend = f;
      cell.g_trend = g;
      cell.min_u_mean = rawls.final_mean();
      cell.max_u_mean = util.final_mean();
      cell.pooled_se = pooled_standard_error(rawls, util, rawls.checkpoints.back());
      const double diff = cell.min_u_mean - cell.max_u_mean;
      if (std::abs(diff) <= tie_se * cell.pooled_se)
        cell.outcome = GridOutcome::kTie;
      else
        cell.outcome = diff > 0.0 ? GridOutcome::kRawlsian : GridOutcome::kUtilitarian;
    }
  }
  return grid;
}

const GridCell& grid_cell(const std::array<GridCell, 9>& grid, CurveTrend f, CurveTrend g) {
  for (const auto& cell : grid)
    if (cell.f_trend == f && cell.g_trend == g) return cell;
  throw std::out_of_range("grid cell not found");
}

}  // namespace wdl
