#include "gsobe/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace gsobe {
namespace {

// FFTW's planner is not thread safe; execution on distinct buffers is.
// Plans are created unaligned so they can run on any heap buffer.
class PlanCache {
 public:
  static fftw_plan get(int n, int sign) {
    static PlanCache cache;
    std::scoped_lock lock(cache.mu_);
    auto key = std::make_pair(n, sign);
    auto it = cache.plans_.find(key);
    if (it != cache.plans_.end()) return it->second;
    std::vector<complexd> a(n), b(n);
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.plans_.emplace(key, p);
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void run_dft(int n, int sign, const complexd* in, complexd* out) {
  fftw_plan p = PlanCache::get(n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<complexd*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

// (i*xi)^order without complex pow: cycle through {1, i, -1, -i} * xi^order.
complexd deriv_multiplier(double xi, int order) {
  double mag = 1.0;
  for (int m = 0; m < order; ++m) mag *= xi;
  switch (order % 4) {
    case 0: return {mag, 0.0};
    case 1: return {0.0, mag};
    case 2: return {-mag, 0.0};
    default: return {0.0, -mag};
  }
}

// Scatter coefficients of an n-grid into the matching mode slots of an m-grid.
std::vector<complexd> pad_modes(const SpectralField& f, int m) {
  std::vector<complexd> out(m, complexd{});
  int n = f.grid.n;
  for (int s = 0; s < n; ++s) {
    int j = f.grid.mode(s);
    if (j == -n / 2) continue;  // unpaired mode carries no physical content
    out[j >= 0 ? j : j + m] = f.coeffs[s];
  }
  return out;
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  int n = f.grid.n;
  std::vector<complexd> in(n), out(n);
  for (int i = 0; i < n; ++i) in[i] = f.samples[i];
  run_dft(n, FFTW_FORWARD, in.data(), out.data());
  double ninv = 1.0 / n;
  for (auto& c : out) c *= ninv;
  return SpectralField(f.grid, std::move(out));
}

RealField inverse_transform(const SpectralField& f) {
  int n = f.grid.n;
  std::vector<complexd> out(n);
  run_dft(n, FFTW_BACKWARD, f.coeffs.data(), out.data());
  RealField r(f.grid);
  for (int i = 0; i < n; ++i) r.samples[i] = out[i].real();
  return r;
}

SpectralField spectral_derivative(const SpectralField& f, int order) {
  if (order < 0 || order > 6)
    throw std::invalid_argument("spectral_derivative: order must be in [0, 6]");
  SpectralField out(f.grid);
  int n = f.grid.n;
  for (int s = 0; s < n; ++s) {
    if (order % 2 == 1 && f.grid.mode(s) == -n / 2) {
      out.coeffs[s] = 0.0;
      continue;
    }
    out.coeffs[s] = f.coeffs[s] * deriv_multiplier(f.grid.xi(s), order);
  }
  return out;
}

namespace {

RealField dealiased_product_impl(const std::vector<const RealField*>& fields) {
  const GridSpec& grid = fields[0]->grid;
  for (const auto* f : fields) require_same_grid(grid, f->grid, "dealiased_product");
  int n = grid.n;
  int m = 3 * n;  // covers cubic products exactly

  std::vector<std::vector<complexd>> big;
  big.reserve(fields.size());
  for (const auto* f : fields) {
    auto spec = forward_transform(*f);
    auto padded = pad_modes(spec, m);
    std::vector<complexd> phys(m);
    run_dft(m, FFTW_BACKWARD, padded.data(), phys.data());
    big.push_back(std::move(phys));
  }

  std::vector<complexd> prod(m);
  for (int i = 0; i < m; ++i) {
    complexd v = big[0][i];
    for (std::size_t k = 1; k < big.size(); ++k) v *= big[k][i];
    prod[i] = v;
  }

  std::vector<complexd> spec_m(m);
  run_dft(m, FFTW_FORWARD, prod.data(), spec_m.data());
  double minv = 1.0 / m;

  SpectralField out(grid);
  for (int s = 0; s < n; ++s) {
    int j = grid.mode(s);
    if (j == -n / 2) continue;
    out.coeffs[s] = spec_m[j >= 0 ? j : j + m] * minv;
  }
  return inverse_transform(out);
}

}  // namespace

RealField dealiased_product(const RealField& f, const RealField& g) {
  return dealiased_product_impl({&f, &g});
}

RealField dealiased_product(const RealField& f, const RealField& g, const RealField& h) {
  return dealiased_product_impl({&f, &g, &h});
}

namespace detail {
void dft(int n, int sign, const complexd* in, complexd* out) { run_dft(n, sign, in, out); }
}  // namespace detail

double hermitian_defect(const SpectralField& f) {
  int n = f.grid.n;
  double worst = std::abs(f.coeffs[f.grid.slot(-n / 2)].imag());
  worst = std::max(worst, std::abs(f.coeffs[0].imag()));
  for (int j = 1; j < n / 2; ++j) {
    complexd d = f.coeffs[f.grid.slot(j)] - std::conj(f.coeffs[f.grid.slot(-j)]);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

}  // namespace gsobe
