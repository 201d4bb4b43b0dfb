#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace gsobe {

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

/// Whole-line integral via the substitution x = sinh(t), truncated at
/// |t| = half_width. `splits` lists x-locations (weight centers, roots,
/// extrema) that become segment boundaries so narrow features are resolved.
double integrate_line(const std::function<double(double)>& f, double tol,
                      const std::vector<double>& splits = {},
                      double half_width = 60.0);

/// Decay profile of the two-center weight bound: 1 when rho > 1,
/// log(1 + <a>) when rho = 1, <a>^{1-rho} when rho < 1.
double phi_rho(double rho, double a);

struct CenterPairSample {
  double c1 = 0.0;
  double c2 = 0.0;
  double lhs = 0.0;       // integral of <x-c1>^-rho <x-c2>^-gamma
  double rhs = 0.0;       // <c1-c2>^-gamma phi_rho(c1-c2)
  double constant = 0.0;  // lhs / rhs
};

struct Lemma1Report {
  double rho = 0.0;
  double gamma = 0.0;
  std::vector<CenterPairSample> samples;
  double max_constant = 0.0;
  bool stable = true;  // no sample exceeded 10x the running median
};

/// Quadrature check of the two-center weighted integral bound. Requires
/// rho >= gamma >= 0 and rho + gamma > 1; at least one center pair.
Lemma1Report lemma1_check(double rho, double gamma,
                          const std::vector<std::pair<double, double>>& centers);

struct PolyBoundSample {
  std::vector<double> coeffs;  // c0 .. c_deg
  double p = 0.0;
  double lhs = 0.0;       // integral of <poly(x)>^-p
  double rhs = 0.0;       // the comparison quantity of the matching bound
  double constant = 0.0;  // lhs / rhs
};

/// Quadrature check of the polynomial level-set bounds. coeffs holds
/// c0..c_deg with the leading coefficient nonzero. Quadratic (3 coeffs):
/// requires p > 1/2; for p > 1 the sharper discriminant-weighted right side
/// |c2|^{-1/2} <c0 - c1^2/(4 c2)>^{-1/2} is used, otherwise |c2|^{-1/2}.
/// Cubic (4 coeffs): requires p > 1/3, right side |c3|^{-1/3}.
PolyBoundSample lemma23_check(const std::vector<double>& coeffs, double p);

}  // namespace gsobe
