#pragma once

#include <optional>
#include <utility>

namespace wdl {

enum class CurveShape { kPiecewiseLinear, kSigmoid, kConstant };
enum class Direction { kNonDecreasing, kNonIncreasing };

/// Bounded monotone response of welfare: the return curve f_i or the decay curve g_i.
///
/// Piecewise-linear curves are pinned to one bound below `knot_low`, to the
/// other above `knot_high`, and interpolate linearly in between. Sigmoid curves
/// use the knots as the transition band and approach the bounds asymptotically.
/// With a `reversal_threshold` tau the curve follows its declared direction up
/// to tau and is reflected about its value at tau beyond it (clamped to the bounds).
struct ResponseCurve {
  double lower_bound = 1.0;
  double upper_bound = 1.0;
  CurveShape shape = CurveShape::kConstant;
  double knot_low = 0.0;
  double knot_high = 1.0;
  Direction direction = Direction::kNonDecreasing;
  std::optional<double> reversal_threshold;

  static ResponseCurve constant(double value);
  static ResponseCurve piecewise_linear(double lower, double upper, double knot_low,
                                        double knot_high, Direction direction);
  static ResponseCurve sigmoid(double lower, double upper, double knot_low, double knot_high,
                               Direction direction);

  ResponseCurve with_reversal(double tau) const;

  /// True for the constant shape and for degenerate curves with lower == upper.
  bool is_constant() const noexcept;
};

/// Throws std::invalid_argument when the curve invariants fail.
void validate(const ResponseCurve& curve);

double eval_curve(const ResponseCurve& curve, double u);

/// (infimum, supremum) as stored on the curve.
std::pair<double, double> curve_bounds(const ResponseCurve& curve);

/// Exact check that f + g is non-decreasing everywhere, for piecewise-linear or
/// constant curves without reversal (the sum is linear between breakpoints).
bool sum_non_decreasing(const ResponseCurve& f, const ResponseCurve& g);

}  // namespace wdl
