#include "gsobe/spacetime.hpp"

#include <cmath>

#include "gsobe/transforms.hpp"

namespace gsobe {

double sobolev_norm(const SpectralField& f, double s) {
  double total = 0.0;
  for (int slot = 0; slot < f.grid.n; ++slot) {
    const double xi = f.grid.xi(slot);
    total += std::pow(1.0 + xi * xi, s) * std::norm(f.coeffs[static_cast<std::size_t>(slot)]);
  }
  return std::sqrt(f.grid.length * total);
}

double sobolev_norm(const RealField& f, double s) { return sobolev_norm(forward_transform(f), s); }

double xsb_lattice_norm(const SpaceTimeSpectrum& F, double s, double b, int k,
                        WeightVariant variant) {
  require_k(k);
  double total = 0.0;
  for (int sx = 0; sx < F.lattice.n_xi; ++sx) {
    const double xi = F.lattice.xi(sx);
    const double wx2 = std::pow(1.0 + xi * xi, s);
    for (int st = 0; st < F.lattice.n_tau; ++st) {
      const double tau = F.lattice.tau(st);
      const double wt = modulation_weight(tau, xi, b, k, variant);
      total += wx2 * wt * wt * std::norm(F.at(sx, st));
    }
  }
  return std::sqrt(total * F.lattice.dxi * F.lattice.dtau);
}

}  // namespace gsobe
