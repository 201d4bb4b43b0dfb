#pragma once

#include <vector>

#include "gsobe/cutoff.hpp"
#include "gsobe/dispersion.hpp"
#include "gsobe/field.hpp"

namespace gsobe {

/// Uniform (xi, tau) lattice, symmetric about the origin, with the same slot
/// convention as GridSpec in each variable: slots [0 .. n/2-1] are modes
/// 0..n/2-1, slots [n/2 .. n-1] are modes -n/2..-1.
struct LatticeSpec {
  int n_xi = 0;
  int n_tau = 0;
  double dxi = 0.0;
  double dtau = 0.0;

  LatticeSpec() = default;
  LatticeSpec(int nx, int nt, double dx_, double dt_) : n_xi(nx), n_tau(nt), dxi(dx_), dtau(dt_) {
    if (nx < 4 || nx % 2 != 0 || nt < 4 || nt % 2 != 0)
      throw std::invalid_argument("LatticeSpec: counts must be even and at least 4");
    if (!(dx_ > 0.0) || !(dt_ > 0.0))
      throw std::invalid_argument("LatticeSpec: spacings must be positive");
  }

  int mode(int slot, int n) const { return slot < n / 2 ? slot : slot - n; }
  double xi(int slot_x) const { return mode(slot_x, n_xi) * dxi; }
  double tau(int slot_t) const { return mode(slot_t, n_tau) * dtau; }
  double xi_max() const { return n_xi / 2 * dxi; }
  double tau_max() const { return n_tau / 2 * dtau; }
  bool operator==(const LatticeSpec&) const = default;
};

/// Complex amplitudes on a space-time frequency lattice, row-major over
/// (xi slot, tau slot). Scaled so that weighted l2 sums against the cell
/// measure dxi*dtau discretize the continuum norms.
struct SpaceTimeSpectrum {
  LatticeSpec lattice;
  std::vector<complexd> coeffs;

  SpaceTimeSpectrum() = default;
  explicit SpaceTimeSpectrum(const LatticeSpec& l)
      : lattice(l), coeffs(static_cast<std::size_t>(l.n_xi) * l.n_tau) {}

  complexd& at(int slot_x, int slot_t) {
    return coeffs[static_cast<std::size_t>(slot_x) * lattice.n_tau + slot_t];
  }
  const complexd& at(int slot_x, int slot_t) const {
    return coeffs[static_cast<std::size_t>(slot_x) * lattice.n_tau + slot_t];
  }
};

/// sqrt(L * sum <xi>^2s |coeff|^2): trapezoid-free Plancherel discretization
/// of the Sobolev norm on the periodic domain.
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const RealField& f, double s);

/// Weighted lattice l2 norm: sqrt(sum (<xi>^s w_b(tau,xi))^2 |F|^2 dxi dtau).
double xsb_lattice_norm(const SpaceTimeSpectrum& F, double s, double b, int k,
                        WeightVariant variant);

}  // namespace gsobe
