#pragma once

#include <cstdint>
#include <vector>

#include "gsobe/spacetime.hpp"

namespace gsobe {

/// Families of weighted convolution functionals probed by the lab. Each one
/// is a reduced integrand: nonnegative test data h_j(xi, tau) on a common
/// lattice, multiplied by per-leg frequency weights and modulation weights,
/// summed over the incidence set {sum xi = 0, sum tau = 0}.
enum class FunctionalFamily {
  bilinear_x2,    // arity 3: |xi3| <xi1>^p <xi2>^p <xi3>^{-2-p}
  bilinear_x4,    // arity 3: |xi3|^3 <xi1>^p <xi2>^p <xi3>^{-2-p}
  bilinear_uvxx,  // arity 3: |xi3| xi2^2 <xi1>^{-s} <xi2>^{-s} <xi3>^{s-2}
  quadrilinear,   // arity 4: |xi4| <xi1>^{-s} <xi2>^{-s} <xi3>^{-s} <xi4>^{s-2}
};

int family_arity(FunctionalFamily family);

/// For the x2/x4 families `exponent` is p (the dual-weight power, p = -s);
/// for the others it is the Sobolev index s itself.
struct FunctionalSpec {
  FunctionalFamily family = FunctionalFamily::bilinear_x2;
  int arity = 3;
  double exponent = 0.0;
  double b = 0.55;

  void validate() const;
};

/// Conservative upper end of the admissible modulation exponent range for a
/// family at the given exponent: 3/4 - p/3 for the x2/x4 families, s itself
/// for the rest.
double default_b0(FunctionalFamily family, double exponent);

/// Frequency and modulation weight carried by leg `leg` (0-based). Legs
/// 0..arity-2 carry <L>^{-b}; the final leg carries <L>^{-(1-b)}, where L is
/// the cubic-variant modulation distance.
double leg_weight(const FunctionalSpec& spec, int leg, double xi, double tau,
                  int k);

/// Sum of prod_j leg_weight_j * |h_j| over cell-exact incidences (mode-index
/// sums zero in both variables), times the cell measure (dxi dtau)^(arity-1).
/// Evaluated as a padded-FFT convolution read off at index zero.
double multilinear_functional(const std::vector<SpaceTimeSpectrum>& h,
                              const FunctionalSpec& spec, int k);

struct EstimateSample {
  int lattice_n = 0;
  int sample_id = 0;
  double ratio = 0.0;  // functional / prod_j ||h_j||_l2
};

struct EstimateReport {
  FunctionalSpec spec;
  int k = -1;
  std::vector<int> lattice_sizes;
  int n_samples = 0;
  std::vector<EstimateSample> samples;
  std::vector<double> max_ratio;     // per lattice size
  std::vector<double> median_ratio;  // per lattice size
};

/// Randomized lower-bound probe of the discrete multiplier norm. For each
/// size n the lattice spans xi in [-4, 4) and tau in [-72, 72) with
/// n_tau = 8 n, so the characteristic tau = |xi|^3 + (k/2)|xi| stays inside
/// the tau range and doubling n refines a fixed domain. Even sample ids draw
/// independent Gaussian envelopes per leg; odd ids draw bumps concentrated
/// along a characteristic branch (the mass profiles that saturate the
/// estimates). Sample profiles are continuum-parameterized and keyed by id
/// only, so each id evaluates the same function at every size and per-size
/// maxima compare refinements of identical inputs. Records ratio =
/// functional / prod ||h_j|| plus per-size max and median. Fully
/// deterministic for a fixed seed.
EstimateReport constant_sweep(const FunctionalSpec& spec, double s_or_p,
                              double b, int k, int n_samples,
                              const std::vector<int>& lattice_sizes,
                              std::uint64_t seed);

}  // namespace gsobe
