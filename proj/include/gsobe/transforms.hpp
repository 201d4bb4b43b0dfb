#pragma once

#include "gsobe/field.hpp"

namespace gsobe {

/// DFT with the 1/n factor on the forward direction.
SpectralField forward_transform(const RealField& f);

/// Unnormalized synthesis; imaginary residue of a Hermitian spectrum is dropped.
RealField inverse_transform(const SpectralField& f);

/// Multiply by (i*xi)^order, order in [0, 6]. The unpaired Nyquist mode is
/// zeroed for odd orders so derivatives of real fields stay real.
SpectralField spectral_derivative(const SpectralField& f, int order);

/// Pointwise products evaluated on a 3x zero-padded grid, so quadratic and
/// cubic products are exact convolutions with no aliased content. The result
/// keeps modes |j| <= n/2 - 1 (Nyquist slot zeroed).
RealField dealiased_product(const RealField& f, const RealField& g);
RealField dealiased_product(const RealField& f, const RealField& g, const RealField& h);

/// Max deviation from conjugate symmetry, coeffs[j] == conj(coeffs[-j]).
double hermitian_defect(const SpectralField& f);

namespace detail {
/// Raw complex DFT of length n (any n >= 1), unnormalized; sign -1 forward,
/// +1 backward. in and out may not alias.
void dft(int n, int sign, const complexd* in, complexd* out);
}  // namespace detail

}  // namespace gsobe
