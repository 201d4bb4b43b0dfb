#include "gsobe/dispersion.hpp"

namespace gsobe {

double dispersion_symbol(double xi, int k) {
  require_k(k);
  const double x2 = xi * xi;
  return std::abs(xi) * std::sqrt(x2 * x2 + k * x2 + 1.0);
}

double v2_multiplier(double xi, int k) {
  require_k(k);
  if (xi == 0.0) return 0.0;
  const double x2 = xi * xi;
  return std::abs(xi) / std::sqrt(x2 * x2 + k * x2 + 1.0);
}

double modulation_distance(double tau, double xi, int k, WeightVariant variant) {
  require_k(k);
  if (variant == WeightVariant::exact) return std::abs(tau) - dispersion_symbol(xi, k);
  const double a = std::abs(xi);
  return std::abs(tau) - a * a * a - 0.5 * k * a;
}

double modulation_weight(double tau, double xi, double b, int k, WeightVariant variant) {
  return std::pow(jbracket(modulation_distance(tau, xi, k, variant)), b);
}

}  // namespace gsobe
