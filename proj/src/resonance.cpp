#include "gsobe/resonance.hpp"

#include <cmath>
#include <stdexcept>

#include "gsobe/dispersion.hpp"

namespace gsobe {

namespace {

constexpr std::array<std::array<int, 3>, 6> kTauSigns = {{
    {+1, +1, -1},  // A
    {+1, -1, +1},  // B
    {+1, -1, -1},  // C
    {-1, +1, +1},  // D
    {-1, +1, -1},  // E
    {-1, -1, +1},  // F
}};

constexpr std::array<std::array<int, 3>, 6> kXiSigns = {{
    {+1, +1, -1},  // a
    {+1, -1, -1},  // b
    {-1, +1, -1},  // c
    {-1, -1, +1},  // d
    {-1, +1, +1},  // e
    {+1, -1, +1},  // f
}};

}  // namespace

std::array<int, 3> tau_signs(TauPattern pattern) {
  return kTauSigns[static_cast<int>(pattern)];
}

std::array<int, 3> xi_signs(XiPattern pattern) {
  return kXiSigns[static_cast<int>(pattern)];
}

double l_value(double tau, double xi, int k, int branch_sign) {
  require_k(k);
  if (branch_sign != 1 && branch_sign != -1) {
    throw std::invalid_argument("l_value: branch_sign must be +1 or -1");
  }
  const double a = std::abs(xi);
  return tau - branch_sign * (a * a * a + 0.5 * k * a);
}

double resonance_from_l(double xi1, double xi2, double xi3,
                        const SignRegion& region, int k) {
  require_k(k);
  const std::array<double, 3> xi = {xi1, xi2, xi3};
  const double scale = std::max(
      {1.0, std::abs(xi1), std::abs(xi2), std::abs(xi3)});
  if (std::abs(xi1 + xi2 + xi3) > 1e-12 * scale) {
    throw std::invalid_argument("resonance_from_l: frequencies must sum to zero");
  }
  const std::array<int, 3> signs = xi_signs(region.xi_pattern);
  for (int i = 0; i < 3; ++i) {
    if (signs[i] * xi[i] < 0.0) {
      throw std::invalid_argument(
          "resonance_from_l: frequency sign pattern violated");
    }
  }
  const std::array<int, 3> branches = tau_signs(region.tau_pattern);
  double h = 0.0;
  for (int i = 0; i < 3; ++i) {
    h += l_value(0.0, xi[i], k, branches[i]);
  }
  return h;
}

double resonance_closed_form(double xi1, double xi2, double xi3,
                             const SignRegion& region) {
  const bool tau_a = region.tau_pattern == TauPattern::A;
  const bool tau_b = region.tau_pattern == TauPattern::B;
  if (!tau_a && !tau_b) {
    throw std::invalid_argument("resonance_closed_form: unsupported region");
  }
  switch (region.xi_pattern) {
    case XiPattern::a:
      return tau_a ? 3.0 * xi1 * xi2 * (xi1 + xi2)
                   : -xi1 * (2.0 * xi1 * xi1 + 3.0 * xi1 * xi2 +
                             3.0 * xi2 * xi2 - 1.0);
    case XiPattern::b:
      return tau_a ? xi2 * (3.0 * xi1 * xi1 + 3.0 * xi1 * xi2 +
                            2.0 * xi2 * xi2 - 1.0)
                   : xi3 * (2.0 * xi3 * xi3 + 3.0 * xi1 * xi3 +
                            3.0 * xi1 * xi1 - 1.0);
    case XiPattern::c:
      return tau_a ? xi1 * (2.0 * xi1 * xi1 + 3.0 * xi1 * xi3 +
                            3.0 * xi3 * xi3 - 1.0)
                   : 3.0 * xi1 * xi2 * xi3;
    default:
      throw std::invalid_argument("resonance_closed_form: unsupported region");
  }
}

}  // namespace gsobe
