#pragma once

#include <array>
#include <string_view>

#include "wdl/experiment.hpp"

namespace wdl {

enum class GridOutcome { kRawlsian, kUtilitarian, kTie };

std::string_view to_string(GridOutcome outcome) noexcept;

struct GridCell {
  CurveTrend f_trend = CurveTrend::kIncreasing;
  CurveTrend g_trend = CurveTrend::kDecreasing;
  double min_u_mean = 0.0;
  double max_u_mean = 0.0;
  double pooled_se = 0.0;
  GridOutcome outcome = GridOutcome::kTie;
};

/// Order of the trend axes in the grid: decreasing, increasing, constant.
inline constexpr std::array<CurveTrend, 3> kGridTrends{
    CurveTrend::kDecreasing, CurveTrend::kIncreasing, CurveTrend::kConstant};

/// Compares min-U and max-U for every (f trend, g trend) pair using the
/// population, bounds, noise and horizon of `base`. A constant trend pins the
/// curve (and its bounds) to the midpoint of the base bounds. A cell is a tie
/// when the final means differ by at most `tie_se` pooled standard errors.
/// Cells are returned f-major in kGridTrends order.
std::array<GridCell, 9> monotonicity_grid(const ExperimentConfig& base, double tie_se = 3.0);

const GridCell& grid_cell(const std::array<GridCell, 9>& grid, CurveTrend f, CurveTrend g);

}  // namespace wdl
