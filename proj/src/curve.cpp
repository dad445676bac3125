#include "wdl/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace wdl {

namespace {

// Fraction of the way from the low-welfare end to the high-welfare end, in [0, 1].
double progress(const ResponseCurve& c, double u) {
  switch (c.shape) {
    case CurveShape::kPiecewiseLinear:
      if (u <= c.knot_low) return 0.0;
      if (u >= c.knot_high) return 1.0;
      return (u - c.knot_low) / (c.knot_high - c.knot_low);
    case CurveShape::kSigmoid: {
      const double mid = 0.5 * (c.knot_low + c.knot_high);
      const double steepness = 10.0 / (c.knot_high - c.knot_low);
      return 1.0 / (1.0 + std::exp(-steepness * (u - mid)));
    }
    case CurveShape::kConstant:
      return 0.0;
  }
  return 0.0;
}

double eval_monotone(const ResponseCurve& c, double u) {
  const double span = c.upper_bound - c.lower_bound;
  const double s = progress(c, u);
  const double v = c.direction == Direction::kNonDecreasing ? c.lower_bound + span * s
                                                            : c.upper_bound - span * s;
  return std::clamp(v, c.lower_bound, c.upper_bound);
}

}  // namespace

ResponseCurve ResponseCurve::constant(double value) {
  ResponseCurve c;
  c.lower_bound = value;
  c.upper_bound = value;
  c.shape = CurveShape::kConstant;
  return c;
}

ResponseCurve ResponseCurve::piecewise_linear(double lower, double upper, double knot_low,
                                              double knot_high, Direction direction) {
  ResponseCurve c;
  c.lower_bound = lower;
  c.upper_bound = upper;
  c.shape = CurveShape::kPiecewiseLinear;
  c.knot_low = knot_low;
  c.knot_high = knot_high;
  c.direction = direction;
  return c;
}

ResponseCurve ResponseCurve::sigmoid(double lower, double upper, double knot_low,
                                     double knot_high, Direction direction) {
  ResponseCurve c = piecewise_linear(lower, upper, knot_low, knot_high, direction);
  c.shape = CurveShape::kSigmoid;
  return c;
}

ResponseCurve ResponseCurve::with_reversal(double tau) const {
  ResponseCurve c = *this;
  c.reversal_threshold = tau;
  return c;
}

bool ResponseCurve::is_constant() const noexcept {
  return shape == CurveShape::kConstant || lower_bound == upper_bound;
}

void validate(const ResponseCurve& curve) {
  if (!std::isfinite(curve.lower_bound) || !std::isfinite(curve.upper_bound))
    throw std::invalid_argument("curve bounds must be finite");
  if (!(curve.lower_bound > 0.0))
    throw std::invalid_argument("curve lower bound must be positive");
  if (curve.lower_bound > curve.upper_bound)
    throw std::invalid_argument("curve lower bound exceeds upper bound");
  if (curve.shape != CurveShape::kConstant && !(curve.knot_low < curve.knot_high))
    throw std::invalid_argument("curve knots must satisfy knot_low < knot_high");
  if (curve.shape == CurveShape::kConstant && curve.lower_bound != curve.upper_bound)
    throw std::invalid_argument("constant curve needs lower == upper");
  if (curve.reversal_threshold && !std::isfinite(*curve.reversal_threshold))
    throw std::invalid_argument("reversal threshold must be finite");
}

double eval_curve(const ResponseCurve& curve, double u) {
  if (curve.is_constant()) return curve.lower_bound;
  if (curve.reversal_threshold && u > *curve.reversal_threshold) {
    const double pivot = eval_monotone(curve, *curve.reversal_threshold);
    return std::clamp(2.0 * pivot - eval_monotone(curve, u), curve.lower_bound,
                      curve.upper_bound);
  }
  return eval_monotone(curve, u);
}

std::pair<double, double> curve_bounds(const ResponseCurve& curve) {
  return {curve.lower_bound, curve.upper_bound};
}

bool sum_non_decreasing(const ResponseCurve& f, const ResponseCurve& g) {
  auto breakpoints_ok = [](const ResponseCurve& c) {
    return !c.reversal_threshold &&
           (c.is_constant() || c.shape == CurveShape::kPiecewiseLinear);
  };
  if (!breakpoints_ok(f) || !breakpoints_ok(g))
    throw std::invalid_argument("sum_non_decreasing needs piecewise-linear curves");

  std::array<double, 4> xs{f.knot_low, f.knot_high, g.knot_low, g.knot_high};
  std::sort(xs.begin(), xs.end());
  double prev = eval_curve(f, xs[0]) + eval_curve(g, xs[0]);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double cur = eval_curve(f, xs[k]) + eval_curve(g, xs[k]);
    if (cur < prev - 1e-12) return false;
    prev = cur;
  }
  return true;
}

}  // namespace wdl
