#pragma once

#include <cmath>
#include <stdexcept>

namespace gsobe {

/// Smooth time cutoff built from exp(-1/x) glue: identically 1 on
/// [-scale, scale], identically 0 outside [-2 scale, 2 scale], C^infinity in
/// between, with an analytic derivative.
class CutoffFn {
 public:
  explicit CutoffFn(double scale = 1.0) : scale_(scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("CutoffFn: scale must be positive");
  }

  double scale() const { return scale_; }

  double value(double t) const {
    const double u = std::abs(t) / scale_;
    if (u <= 1.0) return 1.0;
    if (u >= 2.0) return 0.0;
    return step(2.0 - u);
  }

  double derivative(double t) const {
    const double u = std::abs(t) / scale_;
    if (u <= 1.0 || u >= 2.0) return 0.0;
    const double sign = t > 0.0 ? 1.0 : -1.0;
    return -sign / scale_ * step_derivative(2.0 - u);
  }

 private:
  static double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
  static double glue_derivative(double x) {
    return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
  }
  // Monotone C^inf step: 0 at x<=0, 1 at x>=1.
  static double step(double x) {
    const double g = glue(x);
    return g / (g + glue(1.0 - x));
  }
  static double step_derivative(double x) {
    const double g = glue(x), h = glue(1.0 - x);
    const double denom = g + h;
    return (glue_derivative(x) * h + g * glue_derivative(1.0 - x)) / (denom * denom);
  }

  double scale_;
};

}  // namespace gsobe
