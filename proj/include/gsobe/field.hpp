#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsobe {

using complexd = std::complex<double>;

/// Uniform periodic grid on [0, L). Modes are xi_j = 2*pi*j/L with
/// j in [-n/2, n/2); spectral storage follows DFT slot order
/// [0, 1, ..., n/2-1, -n/2, ..., -1] and the forward transform carries
/// the 1/n factor, so coefficients are line-spectrum amplitudes.
struct GridSpec {
  int n = 0;
  double length = 2.0 * std::numbers::pi;

  GridSpec() = default;
  GridSpec(int n_points, double domain_length) : n(n_points), length(domain_length) {
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument("GridSpec: n_points must be even and >= 8");
    if (!(length > 0.0))
      throw std::invalid_argument("GridSpec: domain length must be positive");
  }

  double dx() const { return length / n; }
  double x(int i) const { return length * i / n; }
  /// Integer mode number for a storage slot.
  int mode(int slot) const { return slot < n / 2 ? slot : slot - n; }
  double xi(int slot) const { return 2.0 * std::numbers::pi * mode(slot) / length; }
  int slot(int mode_j) const { return mode_j >= 0 ? mode_j : mode_j + n; }

  bool operator==(const GridSpec&) const = default;
};

struct RealField {
  GridSpec grid;
  std::vector<double> samples;

  RealField() = default;
  explicit RealField(const GridSpec& g) : grid(g), samples(g.n, 0.0) {}
  RealField(const GridSpec& g, std::vector<double> values) : grid(g), samples(std::move(values)) {
    if (static_cast<int>(samples.size()) != grid.n)
      throw std::invalid_argument("RealField: sample count does not match grid");
  }
};

struct SpectralField {
  GridSpec grid;
  std::vector<complexd> coeffs;  // DFT slot order

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.n, complexd{}) {}
  SpectralField(const GridSpec& g, std::vector<complexd> values)
      : grid(g), coeffs(std::move(values)) {
    if (static_cast<int>(coeffs.size()) != grid.n)
      throw std::invalid_argument("SpectralField: coefficient count does not match grid");
  }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const std::string& where) {
  if (!(a == b)) throw std::invalid_argument(where + ": fields live on different grids");
}

inline void require_same_grid(const RealField& a, const RealField& b, const std::string& where) {
  require_same_grid(a.grid, b.grid, where);
}

inline void require_same_grid(const SpectralField& a, const SpectralField& b,
                              const std::string& where) {
  require_same_grid(a.grid, b.grid, where);
}

}  // namespace gsobe
