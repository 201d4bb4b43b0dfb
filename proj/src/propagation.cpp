#include "gsobe/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "gsobe/transforms.hpp"

namespace gsobe {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-5) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

struct ModeTables {
  std::vector<double> phi, v2, xi2;
};

ModeTables mode_tables(const GridSpec& g, int k) {
  require_k(k);
  ModeTables t;
  t.phi.resize(static_cast<std::size_t>(g.n));
  t.v2.resize(static_cast<std::size_t>(g.n));
  t.xi2.resize(static_cast<std::size_t>(g.n));
  for (int slot = 0; slot < g.n; ++slot) {
    const double xi = g.xi(slot);
    const auto i = static_cast<std::size_t>(slot);
    t.phi[i] = dispersion_symbol(xi, k);
    t.v2[i] = v2_multiplier(xi, k);
    t.xi2[i] = xi * xi;
  }
  return t;
}

double sup_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

// Weights of a fourth-order composite rule for samples 0..m at spacing h:
// Simpson on an even prefix, a 3/8 tail when m is odd, trapezoid when only
// two samples exist.
std::vector<double> quadrature_weights(int m, double h) {
  if (m < 1) throw std::invalid_argument("quadrature_weights: need at least one interval");
  std::vector<double> w(static_cast<std::size_t>(m) + 1, 0.0);
  if (m == 1) {
    w[0] = w[1] = h / 2.0;
    return w;
  }
  int simpson_end = m;
  if (m % 2 == 1) {
    simpson_end = m - 3;
    const auto e = static_cast<std::size_t>(simpson_end);
    w[e] += 3.0 * h / 8.0;
    w[e + 1] += 9.0 * h / 8.0;
    w[e + 2] += 9.0 * h / 8.0;
    w[e + 3] += 3.0 * h / 8.0;
  }
  if (simpson_end >= 2) {
    w[0] += h / 3.0;
    w[static_cast<std::size_t>(simpson_end)] += h / 3.0;
    for (int i = 1; i < simpson_end; ++i)
      w[static_cast<std::size_t>(i)] += (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  }
  return w;
}

// sum_i w_i sin((t - t_i) phi) v2 fhat_i  — the propagated forcing integral.
SpectralField duhamel_spectral(const std::vector<SpectralField>& fhat, double t, int k) {
  const GridSpec& g = fhat.front().grid;
  const auto tab = mode_tables(g, k);
  const int m = static_cast<int>(fhat.size()) - 1;
  const double h = t / m;
  const auto w = quadrature_weights(m, h);
  SpectralField out(g);
  for (int i = 0; i <= m; ++i) {
    const double dt = t - i * h;
    const auto& f = fhat[static_cast<std::size_t>(i)];
    for (std::size_t slot = 0; slot < out.coeffs.size(); ++slot)
      out.coeffs[slot] += w[static_cast<std::size_t>(i)] * std::sin(dt * tab.phi[slot]) *
                          tab.v2[slot] * f.coeffs[slot];
  }
  return out;
}

// Time derivative of the integral above: kernel cos((t - t_i) phi) xi^2.
SpectralField duhamel_velocity_spectral(const std::vector<SpectralField>& fhat, double t, int k) {
  const GridSpec& g = fhat.front().grid;
  const auto tab = mode_tables(g, k);
  const int m = static_cast<int>(fhat.size()) - 1;
  const double h = t / m;
  const auto w = quadrature_weights(m, h);
  SpectralField out(g);
  for (int i = 0; i <= m; ++i) {
    const double dt = t - i * h;
    const auto& f = fhat[static_cast<std::size_t>(i)];
    for (std::size_t slot = 0; slot < out.coeffs.size(); ++slot)
      out.coeffs[slot] += w[static_cast<std::size_t>(i)] * std::cos(dt * tab.phi[slot]) *
                          tab.xi2[slot] * f.coeffs[slot];
  }
  return out;
}

// N(u) in spectral form: -xi^2 (quadratic + mixed + cubic parts) + xi^4 part.
SpectralField nonlinear_hat(const RealField& u, const ModelParams& params) {
  params.validate();
  const GridSpec& g = u.grid;
  const auto& c = params.nl_coeffs;
  SpectralField acc(g);
  auto accumulate = [&acc](const SpectralField& part, double coeff, int order) {
    const SpectralField d = spectral_derivative(part, order);
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += coeff * d.coeffs[i];
  };
  if (c[0] != 0.0 || c[1] != 0.0) {
    const SpectralField usq = forward_transform(dealiased_product(u, u));
    if (c[0] != 0.0) accumulate(usq, c[0], 2);
    if (c[1] != 0.0) accumulate(usq, c[1], 4);
  }
  if (c[2] != 0.0) {
    const RealField uxx = inverse_transform(spectral_derivative(forward_transform(u), 2));
    accumulate(forward_transform(dealiased_product(u, uxx)), c[2], 2);
  }
  if (c[3] != 0.0) accumulate(forward_transform(dealiased_product(u, u, u)), c[3], 2);
  return acc;
}

}  // namespace

RealField nonlinear_potential(const RealField& u, const ModelParams& params) {
  params.validate();
  const GridSpec& g = u.grid;
  const auto& c = params.nl_coeffs;
  RealField out(g);
  auto axpy = [&out](const RealField& part, double coeff) {
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += coeff * part.samples[i];
  };
  if (c[0] != 0.0 || c[1] != 0.0) {
    const RealField usq = dealiased_product(u, u);
    if (c[0] != 0.0) axpy(usq, c[0]);
    if (c[1] != 0.0)
      axpy(inverse_transform(spectral_derivative(forward_transform(usq), 2)), c[1]);
  }
  if (c[2] != 0.0) {
    const RealField uxx = inverse_transform(spectral_derivative(forward_transform(u), 2));
    axpy(dealiased_product(u, uxx), c[2]);
  }
  if (c[3] != 0.0) axpy(dealiased_product(u, u, u), c[3]);
  return out;
}

std::pair<RealField, RealField> linear_state(const CauchyData& data, double t, int k) {
  const GridSpec& g = data.phi.grid;
  const auto tab = mode_tables(g, k);
  const SpectralField ph = forward_transform(data.phi);
  const SpectralField ps = forward_transform(data.psi);
  SpectralField u(g), v(g);
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    const double c = std::cos(t * tab.phi[i]);
    const double s = std::sin(t * tab.phi[i]);
    u.coeffs[i] = c * ph.coeffs[i] + s * tab.v2[i] * ps.coeffs[i];
    v.coeffs[i] = -tab.phi[i] * s * ph.coeffs[i] + c * tab.xi2[i] * ps.coeffs[i];
  }
  return {inverse_transform(u), inverse_transform(v)};
}

RealField linear_evolve(const CauchyData& data, double t, int k) {
  return linear_state(data, t, k).first;
}

Trajectory linear_trajectory(const CauchyData& data, const std::vector<double>& times, int k) {
  if (times.empty()) throw std::invalid_argument("linear_trajectory: no sample times");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("linear_trajectory: times must be strictly increasing");
  Trajectory traj;
  traj.times = times;
  traj.u.reserve(times.size());
  traj.ut.reserve(times.size());
  for (const double t : times) {
    auto [u, ut] = linear_state(data, t, k);
    traj.u.push_back(std::move(u));
    traj.ut.push_back(std::move(ut));
  }
  return traj;
}

RealField duhamel_integral(const std::vector<RealField>& forcing, double t, int k) {
  if (forcing.size() < 2)
    throw std::invalid_argument("duhamel_integral: need at least two forcing samples");
  if (!(t > 0.0)) throw std::invalid_argument("duhamel_integral: t must be positive");
  for (std::size_t i = 1; i < forcing.size(); ++i)
    require_same_grid(forcing[0], forcing[i], "duhamel_integral");
  std::vector<SpectralField> fhat;
  fhat.reserve(forcing.size());
  for (const auto& f : forcing) fhat.push_back(forward_transform(f));
  return inverse_transform(duhamel_spectral(fhat, t, k));
}

RealField nonlinear_term(const RealField& u, const ModelParams& params) {
  return inverse_transform(nonlinear_hat(u, params));
}

Trajectory evolve(const CauchyData& data, double T, double dt, const ModelParams& params,
                  double cap_factor) {
  params.validate();
  if (!(dt > 0.0) || !(T >= dt)) throw std::invalid_argument("evolve: need 0 < dt <= T");
  const GridSpec& g = data.phi.grid;
  const auto tab = mode_tables(g, params.k);
  const int n_steps = std::max(1, static_cast<int>(std::llround(T / dt)));
  const double h = T / n_steps;

  std::vector<double> rot_cos(tab.phi.size()), rot_sinc(tab.phi.size()), rot_sin(tab.phi.size());
  for (std::size_t i = 0; i < tab.phi.size(); ++i) {
    rot_cos[i] = std::cos(h * tab.phi[i]);
    rot_sinc[i] = h * sinc(h * tab.phi[i]);
    rot_sin[i] = -tab.phi[i] * std::sin(h * tab.phi[i]);
  }

  SpectralField uh = forward_transform(data.phi);
  SpectralField vh = forward_transform(data.psi);
  for (std::size_t i = 0; i < vh.coeffs.size(); ++i) vh.coeffs[i] *= tab.xi2[i];

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.u.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.ut.reserve(static_cast<std::size_t>(n_steps) + 1);
  RealField u_real = inverse_transform(uh);
  traj.times.push_back(0.0);
  traj.u.push_back(u_real);
  traj.ut.push_back(inverse_transform(vh));

  const double cap = cap_factor * std::max(sup_norm(u_real), 1e-300);
  SpectralField ghat = nonlinear_hat(u_real, params);
  for (int step = 1; step <= n_steps; ++step) {
    for (std::size_t i = 0; i < vh.coeffs.size(); ++i) {
      vh.coeffs[i] += 0.5 * h * ghat.coeffs[i];
      const complexd uc = uh.coeffs[i], vc = vh.coeffs[i];
      uh.coeffs[i] = rot_cos[i] * uc + rot_sinc[i] * vc;
      vh.coeffs[i] = rot_sin[i] * uc + rot_cos[i] * vc;
    }
    u_real = inverse_transform(uh);
    ghat = nonlinear_hat(u_real, params);
    for (std::size_t i = 0; i < vh.coeffs.size(); ++i) vh.coeffs[i] += 0.5 * h * ghat.coeffs[i];

    const double sup = sup_norm(u_real);
    if (!std::isfinite(sup)) {
      traj.blew_up = true;
      break;
    }
    traj.times.push_back(step * h);
    traj.u.push_back(u_real);
    traj.ut.push_back(inverse_transform(vh));
    if (sup > cap) {
      traj.blew_up = true;
      break;
    }
  }
  return traj;
}

PicardResult picard_iterate(const CauchyData& data, double T, int n_iter,
                            const ModelParams& params, const CutoffFn& cutoff, int n_steps) {
  params.validate();
  if (!(T > 0.0) || T > 1.0) throw std::invalid_argument("picard_iterate: need 0 < T <= 1");
  if (n_iter < 1) throw std::invalid_argument("picard_iterate: need at least one iteration");
  if (n_steps < 4 || n_steps % 4 != 0)
    throw std::invalid_argument("picard_iterate: step count must be a positive multiple of 4");

  const double h = 2.0 * T / n_steps;
  std::vector<double> times(static_cast<std::size_t>(n_steps) + 1);
  for (int i = 0; i <= n_steps; ++i) times[static_cast<std::size_t>(i)] = i * h;

  const Trajectory lin = linear_trajectory(data, times, params.k);
  PicardResult result;
  result.iterates.reserve(static_cast<std::size_t>(n_iter) + 1);
  result.iterates.push_back(lin);

  for (int iter = 1; iter <= n_iter; ++iter) {
    const Trajectory& prev = result.iterates.back();
    std::vector<SpectralField> fhat;
    fhat.reserve(times.size());
    for (const auto& u : prev.u) {
      RealField m = nonlinear_potential(u, params);
      for (auto& v : m.samples) v = -v;
      fhat.push_back(forward_transform(m));
    }

    Trajectory next;
    next.times = times;
    next.u.reserve(times.size());
    next.ut.reserve(times.size());
    double gap = 0.0;
    for (int i = 0; i <= n_steps; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      RealField u = lin.u[iu];
      RealField ut = lin.ut[iu];
      if (i > 0) {
        const std::vector<SpectralField> prefix(fhat.begin(), fhat.begin() + i + 1);
        const double t = times[iu];
        const RealField duh = inverse_transform(duhamel_spectral(prefix, t, params.k));
        const RealField duhv = inverse_transform(duhamel_velocity_spectral(prefix, t, params.k));
        const double eta = cutoff.value(t);
        const double etap = cutoff.derivative(t);
        for (std::size_t p = 0; p < u.samples.size(); ++p) {
          u.samples[p] += eta * duh.samples[p];
          ut.samples[p] += etap * duh.samples[p] + eta * duhv.samples[p];
        }
      }
      for (std::size_t p = 0; p < u.samples.size(); ++p)
        gap = std::max(gap, std::abs(u.samples[p] - prev.u[iu].samples[p]));
      next.u.push_back(std::move(u));
      next.ut.push_back(std::move(ut));
    }
    result.iterates.push_back(std::move(next));
    result.gaps.push_back(gap);
  }

  for (std::size_t j = 2; j < result.gaps.size(); ++j)
    if (result.gaps[j] > result.gaps[j - 1] && result.gaps[j - 1] > result.gaps[j - 2])
      result.diverging = true;
  return result;
}

SpaceTimeSpectrum spacetime_spectrum(const Trajectory& traj, const CutoffFn& cutoff) {
  if (traj.times.size() < 4)
    throw std::invalid_argument("spacetime_spectrum: need at least four samples");
  const std::size_t n_use = traj.times.size() % 2 == 0 ? traj.times.size() : traj.times.size() - 1;
  const double dt = traj.times[1] - traj.times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("spacetime_spectrum: bad time spacing");
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    if (std::abs(traj.times[i] - traj.times[i - 1] - dt) > 1e-9 * std::max(1.0, dt))
      throw std::invalid_argument("spacetime_spectrum: trajectory must be uniformly sampled");
  }
  const double lo = traj.times.front(), hi = traj.times.back();
  if (lo > -2.0 * cutoff.scale() + dt / 2 || hi < 2.0 * cutoff.scale() - dt / 2)
    throw std::invalid_argument("spacetime_spectrum: trajectory does not cover the cutoff support");

  const GridSpec& g = traj.grid();
  const int n_x = g.n;
  const auto n_t = static_cast<int>(n_use);
  const double t_win = n_t * dt;
  const double two_pi = 2.0 * std::numbers::pi;
  const LatticeSpec lattice(n_x, n_t, two_pi / g.length, two_pi / t_win);
  SpaceTimeSpectrum F(lattice);

  // x-transform of the localized rows, then a time DFT down each xi column
  std::vector<SpectralField> rows;
  rows.reserve(n_use);
  for (std::size_t i = 0; i < n_use; ++i) {
    RealField w = traj.u[i];
    const double eta = cutoff.value(traj.times[i]);
    for (auto& v : w.samples) v *= eta;
    rows.push_back(forward_transform(w));
  }
  std::vector<complexd> in(n_use), out(n_use);
  const double scale = g.length * t_win / (two_pi * n_t);
  for (int sx = 0; sx < n_x; ++sx) {
    for (std::size_t i = 0; i < n_use; ++i) in[i] = rows[i].coeffs[static_cast<std::size_t>(sx)];
    detail::dft(n_t, -1, in.data(), out.data());
    for (int m = 0; m < n_t; ++m) {
      const double tau = lattice.tau(m);
      const complexd phase = std::polar(1.0, -tau * lo);
      F.at(sx, m) = out[static_cast<std::size_t>(m)] * scale * phase;
    }
  }
  return F;
}

double xsb_diagnostic(const Trajectory& traj, const CutoffFn& cutoff, double s, double b, int k,
                      WeightVariant variant) {
  return xsb_lattice_norm(spacetime_spectrum(traj, cutoff), s, b, k, variant);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
  std::fputs("t,x,u,u_t\n", f);
  const GridSpec& g = traj.grid();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    for (int p = 0; p < g.n; ++p) {
      const auto ip = static_cast<std::size_t>(p);
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", traj.times[i], g.x(p), traj.u[i].samples[ip],
                   traj.ut[i].samples[ip]);
    }
  }
  std::fclose(f);
}

void write_trajectory_binary(const std::string& path, const Trajectory& traj) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_trajectory_binary: cannot open " + path);
  const GridSpec& g = traj.grid();
  const std::uint64_t rows = traj.times.size() * static_cast<std::uint64_t>(g.n);
  const std::uint64_t cols = 4;
  f.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  f.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  auto write_col = [&](auto&& value_at) {
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      for (int p = 0; p < g.n; ++p) {
        const double v = value_at(i, p);
        f.write(reinterpret_cast<const char*>(&v), sizeof v);
      }
  };
  write_col([&](std::size_t i, int) { return traj.times[i]; });
  write_col([&](std::size_t, int p) { return g.x(p); });
  write_col([&](std::size_t i, int p) { return traj.u[i].samples[static_cast<std::size_t>(p)]; });
  write_col([&](std::size_t i, int p) { return traj.ut[i].samples[static_cast<std::size_t>(p)]; });
  if (!f) throw std::runtime_error("write_trajectory_binary: write failed for " + path);
}

}  // namespace gsobe
