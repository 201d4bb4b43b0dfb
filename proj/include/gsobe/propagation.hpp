#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gsobe/cutoff.hpp"
#include "gsobe/dispersion.hpp"
#include "gsobe/field.hpp"
#include "gsobe/spacetime.hpp"

namespace gsobe {

/// Initial data for the second-order Cauchy problem: the displacement phi and
/// the potential psi. The velocity trace is seeded per mode as xi^2 psi-hat,
/// i.e. u_t(.,0) is the (sign-convention) second derivative of psi, so that
/// rough psi still yields one derivative less regularity than phi.
struct CauchyData {
  RealField phi;
  RealField psi;

  CauchyData(RealField phi_, RealField psi_) : phi(std::move(phi_)), psi(std::move(psi_)) {
    require_same_grid(phi, psi, "CauchyData");
  }
};

/// Time-sampled pair (u, u_t) on a fixed spatial grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<RealField> u;
  std::vector<RealField> ut;
  bool blew_up = false;  // set when evolve truncated the run at the norm cap

  const GridSpec& grid() const { return u.at(0).grid; }
  std::size_t size() const { return times.size(); }
};

/// Exact free flow at time t: per mode, cos(t phi(xi)) phihat
/// + sin(t phi(xi)) (xi^2/phi(xi)) psihat.
RealField linear_evolve(const CauchyData& data, double t, int k);

/// Free flow returning both u and u_t at time t.
std::pair<RealField, RealField> linear_state(const CauchyData& data, double t, int k);

/// Free flow sampled at the given times.
Trajectory linear_trajectory(const CauchyData& data, const std::vector<double>& times, int k);

/// Integral of the velocity propagator against a forcing history: forcing
/// samples on the uniform grid of [0, t] are combined with composite
/// fourth-order quadrature; per mode the kernel is
/// sin((t-t') phi(xi)) xi^2/phi(xi).
RealField duhamel_integral(const std::vector<RealField>& forcing, double t, int k);

/// Right-hand nonlinearity N(u) = c0 (u^2)_xx + c1 (u^2)_xxxx
/// + c2 (u u_xx)_xx + c3 (u^3)_xx, dealiased.
RealField nonlinear_term(const RealField& u, const ModelParams& params);

/// Potential form M(u) = c0 u^2 + c1 (u^2)_xx + c2 u u_xx + c3 u^3, so that
/// nonlinear_term = (M)_xx. Feeding -M to duhamel_integral yields the exact
/// nonlinear Duhamel correction (the kernel's xi^2 supplies the outer _xx).
RealField nonlinear_potential(const RealField& u, const ModelParams& params);

struct PicardResult {
  std::vector<Trajectory> iterates;  // iterate 0 is the free flow
  std::vector<double> gaps;          // sup-norm distance between successive iterates
  bool diverging = false;            // gaps grew over three consecutive iterates
};

/// Cutoff-localized fixed-point iteration on the window [0, 2T]:
/// u^(n+1) = free flow + eta(t) * integral of the propagated nonlinearity.
PicardResult picard_iterate(const CauchyData& data, double T, int n_iter,
                            const ModelParams& params, const CutoffFn& cutoff,
                            int n_steps = 64);

/// Trigonometric splitting integrator, exact on the linear flow: half kick by
/// N, exact per-mode rotation over dt, half kick. Truncates with a flag when
/// the sup norm exceeds cap_factor times its initial value.
Trajectory evolve(const CauchyData& data, double T, double dt, const ModelParams& params,
                  double cap_factor = 1e6);

/// Discrete space-time transform of the cutoff-localized trajectory. The
/// trajectory must be uniformly sampled and cover the cutoff support
/// [-2 scale, 2 scale].
SpaceTimeSpectrum spacetime_spectrum(const Trajectory& traj, const CutoffFn& cutoff);

/// Weighted space-time norm of eta(t) u: the localization diagnostic.
double xsb_diagnostic(const Trajectory& traj, const CutoffFn& cutoff, double s, double b, int k,
                      WeightVariant variant);

/// Text export, header t,x,u,u_t, one row per (time, grid point), %.17g.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Binary export: two little-endian uint64 (row count, column count = 4)
/// then column-major float64 columns t, x, u, u_t.
void write_trajectory_binary(const std::string& path, const Trajectory& traj);

}  // namespace gsobe
