#pragma once

#include <array>

namespace gsobe {

// Sign-region bookkeeping for frequency triples on the convolution set
// {xi1 + xi2 + xi3 = 0, tau1 + tau2 + tau3 = 0}. A pattern entry of +1
// means "component >= 0", -1 means "component <= 0"; zeros satisfy both.
enum class TauPattern { A, B, C, D, E, F };
enum class XiPattern { a, b, c, d, e, f };

struct SignRegion {
  TauPattern tau_pattern;
  XiPattern xi_pattern;
};

std::array<int, 3> tau_signs(TauPattern pattern);
std::array<int, 3> xi_signs(XiPattern pattern);

/// L := tau - branch_sign * (|xi|^3 + (k/2)|xi|), the signed offset of tau
/// from one branch of the cubic approximation to the dispersion relation.
/// With branch_sign matching the sign of tau this equals
/// sign(tau) * (|tau| - |xi|^3 - (k/2)|xi|). branch_sign must be +1 or -1.
double l_value(double tau, double xi, int k, int branch_sign);

/// Resonance sum H = L1 + L2 + L3 with the branch signs of `region`. On the
/// convolution set the taus cancel, so H depends only on the frequencies.
/// Requires xi1 + xi2 + xi3 = 0 and the region's frequency sign pattern.
double resonance_from_l(double xi1, double xi2, double xi3,
                        const SignRegion& region, int k);

/// Polynomial closed form of the resonance sum for k = -1, available on the
/// six regions with tau pattern A or B and xi pattern a, b, or c. Throws for
/// any other region.
double resonance_closed_form(double xi1, double xi2, double xi3,
                             const SignRegion& region);

}  // namespace gsobe
