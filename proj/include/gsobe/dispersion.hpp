#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace gsobe {

/// sqrt(1 + x^2)
inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }

/// Model selector: sign k of the fourth-derivative term, Sobolev/modulation
/// exponents used by diagnostics, and the four nonlinearity coefficients
/// weighting (u^2)_xx, (u^2)_xxxx, (u u_xx)_xx, (u^3)_xx. Defaults reproduce
/// the canonical equation with every coefficient equal to one.
struct ModelParams {
  int k = -1;
  double s = 0.5;
  double b = 0.55;
  std::array<double, 4> nl_coeffs{1.0, 1.0, 1.0, 1.0};

  void validate() const {
    if (k != 1 && k != -1) throw std::invalid_argument("ModelParams: k must be +1 or -1");
  }
};

inline void require_k(int k) {
  if (k != 1 && k != -1) throw std::invalid_argument("k must be +1 or -1");
}

/// Dispersion relation: sqrt(xi^6 + k xi^4 + xi^2). The radicand factors as
/// xi^2((xi^2 + k/2)^2 + 1 - k^2/4), nonnegative for k = +-1.
double dispersion_symbol(double xi, int k);

/// xi^2 / dispersion_symbol(xi), extended by its limit 0 at xi = 0.
double v2_multiplier(double xi, int k);

enum class WeightVariant { exact, cubic };

/// Distance to the characteristic set: |tau| - phi(xi) for the exact variant,
/// |tau| - |xi|^3 - (k/2)|xi| for the cubic surrogate.
double modulation_distance(double tau, double xi, int k, WeightVariant variant);

/// <modulation_distance>^b
double modulation_weight(double tau, double xi, double b, int k, WeightVariant variant);

}  // namespace gsobe
