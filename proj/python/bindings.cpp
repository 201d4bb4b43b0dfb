// Python face of the library: thin converters between numpy arrays and the
// grid/field types, plus direct re-exports of the scalar entry points.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsobe/derivation.hpp"
#include "gsobe/dispersion.hpp"
#include "gsobe/functionals.hpp"
#include "gsobe/lemmas.hpp"
#include "gsobe/propagation.hpp"
#include "gsobe/resonance.hpp"
#include "gsobe/transforms.hpp"

namespace py = pybind11;
using namespace gsobe;

namespace {

RealField field_from(const py::array_t<double>& a, double length) {
  const auto buf = a.request();
  if (buf.ndim != 1) throw std::invalid_argument("field arrays must be 1-D");
  const int n = static_cast<int>(buf.shape[0]);
  RealField f(GridSpec(n, length));
  const auto* p = static_cast<const double*>(buf.ptr);
  const auto stride = static_cast<std::size_t>(buf.strides[0] / sizeof(double));
  for (int i = 0; i < n; ++i) f.samples[static_cast<std::size_t>(i)] = p[i * stride];
  return f;
}

py::array_t<double> array_from(const RealField& f) {
  py::array_t<double> out(f.samples.size());
  auto* p = static_cast<double*>(out.request().ptr);
  for (std::size_t i = 0; i < f.samples.size(); ++i) p[i] = f.samples[i];
  return out;
}

py::array_t<double> matrix_from(const std::vector<RealField>& rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.front().samples.size();
  py::array_t<double> out({nr, nc});
  auto* p = static_cast<double*>(out.request().ptr);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) p[r * nc + c] = rows[r].samples[c];
  return out;
}

ModelParams params_from(int k, const std::array<double, 4>& nl) {
  ModelParams params;
  params.k = k;
  params.nl_coeffs = nl;
  return params;
}

SignRegion region_from(const std::string& name) {
  if (name.size() != 3 || name[1] != '/')
    throw std::invalid_argument("region must look like 'A/b'");
  const char t = name[0], x = name[2];
  if (t < 'A' || t > 'F' || x < 'a' || x > 'f')
    throw std::invalid_argument("region letters must be A-F and a-f");
  return SignRegion{static_cast<TauPattern>(t - 'A'), static_cast<XiPattern>(x - 'a')};
}

FunctionalFamily family_from(const std::string& name) {
  if (name == "bilinear_x2") return FunctionalFamily::bilinear_x2;
  if (name == "bilinear_x4") return FunctionalFamily::bilinear_x4;
  if (name == "bilinear_uvxx") return FunctionalFamily::bilinear_uvxx;
  if (name == "quadrilinear") return FunctionalFamily::quadrilinear;
  throw std::invalid_argument("unknown functional family: " + name);
}

FunctionalSpec spec_from(const std::string& family, double exponent, double b) {
  FunctionalSpec spec;
  spec.family = family_from(family);
  spec.arity = family_arity(spec.family);
  spec.exponent = exponent;
  spec.b = b;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sixth-order dispersive wave laboratory";

  m.def("grid_points", [](int n, double length) {
    const GridSpec g(n, length);
    py::array_t<double> out(static_cast<std::size_t>(n));
    auto* p = static_cast<double*>(out.request().ptr);
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = g.x(i);
    return out;
  }, py::arg("n"), py::arg("length"), "Uniform periodic grid nodes on [0, length).");

  m.def("dispersion_symbol", py::vectorize(&dispersion_symbol), py::arg("xi"), py::arg("k"),
        "Frequency of the linear flow at wavenumber xi: |xi| sqrt(xi^4 + k xi^2 + 1).");
  m.def("v2_multiplier", py::vectorize(&v2_multiplier), py::arg("xi"), py::arg("k"),
        "Velocity-to-displacement gain xi^2 / symbol, continuous through xi = 0.");

  m.def("linear_evolve",
        [](const py::array_t<double>& phi, const py::array_t<double>& psi, double t, int k,
           double length) {
          const CauchyData data(field_from(phi, length), field_from(psi, length));
          return array_from(linear_evolve(data, t, k));
        },
        py::arg("phi"), py::arg("psi"), py::arg("t"), py::arg("k") = -1,
        py::arg("length") = 2.0 * std::numbers::pi,
        "Free flow of the data (phi, psi) evaluated at time t.");

  m.def("linear_state",
        [](const py::array_t<double>& phi, const py::array_t<double>& psi, double t, int k,
           double length) {
          const CauchyData data(field_from(phi, length), field_from(psi, length));
          const auto [u, ut] = linear_state(data, t, k);
          return py::make_tuple(array_from(u), array_from(ut));
        },
        py::arg("phi"), py::arg("psi"), py::arg("t"), py::arg("k") = -1,
        py::arg("length") = 2.0 * std::numbers::pi,
        "Free flow evaluated at time t, returned as the pair (u, u_t).");

  m.def("evolve",
        [](const py::array_t<double>& phi, const py::array_t<double>& psi, double t_final,
           double dt, int k, const std::array<double, 4>& nl_coeffs, double length,
           double cap_factor) {
          const CauchyData data(field_from(phi, length), field_from(psi, length));
          const Trajectory traj = evolve(data, t_final, dt, params_from(k, nl_coeffs), cap_factor);
          py::dict out;
          out["times"] = py::array_t<double>(traj.times.size(), traj.times.data());
          out["u"] = matrix_from(traj.u);
          out["ut"] = matrix_from(traj.ut);
          out["blew_up"] = traj.blew_up;
          return out;
        },
        py::arg("phi"), py::arg("psi"), py::arg("t_final"), py::arg("dt"), py::arg("k") = -1,
        py::arg("nl_coeffs") = std::array<double, 4>{1.0, 1.0, 1.0, 1.0},
        py::arg("length") = 2.0 * std::numbers::pi, py::arg("cap_factor") = 1e6,
        "Full nonlinear stepper; returns times, u, ut (rows are time samples) and "
        "the blow-up flag.");

  m.def("nonlinear_term",
        [](const py::array_t<double>& u, int k, const std::array<double, 4>& nl_coeffs,
           double length) {
          return array_from(nonlinear_term(field_from(u, length), params_from(k, nl_coeffs)));
        },
        py::arg("u"), py::arg("k") = -1,
        py::arg("nl_coeffs") = std::array<double, 4>{1.0, 1.0, 1.0, 1.0},
        py::arg("length") = 2.0 * std::numbers::pi,
        "Dealiased nonlinearity c0 (u^2)_xx + c1 (u^2)_xxxx + c2 (u u_xx)_xx + c3 (u^3)_xx.");

  m.def("duhamel_integral",
        [](const py::array_t<double>& forcing, double t, int k, double length) {
          const auto buf = forcing.request();
          if (buf.ndim != 2) throw std::invalid_argument("forcing must be 2-D (time x space)");
          const auto rows = static_cast<std::size_t>(buf.shape[0]);
          const int n = static_cast<int>(buf.shape[1]);
          const GridSpec g(n, length);
          std::vector<RealField> f(rows, RealField(g));
          const auto* p = static_cast<const double*>(buf.ptr);
          const auto rs = static_cast<std::size_t>(buf.strides[0] / sizeof(double));
          const auto cs = static_cast<std::size_t>(buf.strides[1] / sizeof(double));
          for (std::size_t r = 0; r < rows; ++r)
            for (int c = 0; c < n; ++c)
              f[r].samples[static_cast<std::size_t>(c)] = p[r * rs + c * cs];
          return array_from(duhamel_integral(f, t, k));
        },
        py::arg("forcing"), py::arg("t"), py::arg("k") = -1,
        py::arg("length") = 2.0 * std::numbers::pi,
        "Propagated forcing integral over [0, t]; rows sample the forcing uniformly in time.");

  m.def("picard_gaps",
        [](const py::array_t<double>& phi, const py::array_t<double>& psi, double T, int n_iter,
           int n_steps, int k, const std::array<double, 4>& nl_coeffs, double length) {
          const CauchyData data(field_from(phi, length), field_from(psi, length));
          const CutoffFn eta(T);
          const PicardResult res =
              picard_iterate(data, T, n_iter, params_from(k, nl_coeffs), eta, n_steps);
          py::dict out;
          out["gaps"] = res.gaps;
          out["diverging"] = res.diverging;
          out["final_u"] = matrix_from(res.iterates.back().u);
          return out;
        },
        py::arg("phi"), py::arg("psi"), py::arg("T"), py::arg("n_iter") = 6,
        py::arg("n_steps") = 64, py::arg("k") = -1,
        py::arg("nl_coeffs") = std::array<double, 4>{1.0, 1.0, 1.0, 1.0},
        py::arg("length") = 2.0 * std::numbers::pi,
        "Cutoff fixed-point iteration on the window [0, 2T]; returns the sup-norm gaps "
        "between successive iterates, the divergence flag, and the last iterate.");

  m.def("l_value", &l_value, py::arg("tau"), py::arg("xi"), py::arg("k"),
        py::arg("branch_sign"),
        "Signed offset of tau from one branch of the cubic dispersion approximation.");

  m.def("resonance_from_l",
        [](double xi1, double xi2, double xi3, const std::string& region, int k) {
          return resonance_from_l(xi1, xi2, xi3, region_from(region), k);
        },
        py::arg("xi1"), py::arg("xi2"), py::arg("xi3"), py::arg("region"), py::arg("k") = -1,
        "Resonance sum of branch offsets on a sign region named like 'A/b'.");

  m.def("resonance_closed_form",
        [](double xi1, double xi2, double xi3, const std::string& region) {
          return resonance_closed_form(xi1, xi2, xi3, region_from(region));
        },
        py::arg("xi1"), py::arg("xi2"), py::arg("xi3"), py::arg("region"),
        "Polynomial closed form of the resonance sum (k = -1 regions A|B x a|b|c).");

  m.def("default_b0",
        [](const std::string& family, double exponent) {
          return default_b0(family_from(family), exponent);
        },
        py::arg("family"), py::arg("exponent"),
        "Upper end of the admissible modulation exponent range for a family.");

  m.def("multilinear_functional",
        [](const std::vector<py::array_t<std::complex<double>>>& legs,
           const std::string& family, double exponent, double b, int k, double dxi,
           double dtau) {
          const FunctionalSpec spec = spec_from(family, exponent, b);
          std::vector<SpaceTimeSpectrum> h;
          for (const auto& leg : legs) {
            const auto buf = leg.request();
            if (buf.ndim != 2) throw std::invalid_argument("legs must be 2-D (xi x tau)");
            const LatticeSpec lat(static_cast<int>(buf.shape[0]),
                                  static_cast<int>(buf.shape[1]), dxi, dtau);
            SpaceTimeSpectrum f(lat);
            const auto* p = static_cast<const std::complex<double>*>(buf.ptr);
            const auto rs =
                static_cast<std::size_t>(buf.strides[0] / sizeof(std::complex<double>));
            const auto cs =
                static_cast<std::size_t>(buf.strides[1] / sizeof(std::complex<double>));
            for (int sx = 0; sx < lat.n_xi; ++sx)
              for (int st = 0; st < lat.n_tau; ++st)
                f.at(sx, st) = p[static_cast<std::size_t>(sx) * rs +
                                 static_cast<std::size_t>(st) * cs];
            h.push_back(std::move(f));
          }
          return multilinear_functional(h, spec, k);
        },
        py::arg("legs"), py::arg("family"), py::arg("exponent"), py::arg("b"),
        py::arg("k") = -1, py::arg("dxi") = 0.25, py::arg("dtau") = 0.5625,
        "Weighted incidence sum over zero-sum frequency/modulation tuples.");

  m.def("constant_sweep",
        [](const std::string& family, double s_or_p, double b, int k, int n_samples,
           const std::vector<int>& sizes, std::uint64_t seed) {
          FunctionalSpec spec;
          spec.family = family_from(family);
          spec.arity = family_arity(spec.family);
          const EstimateReport rep = constant_sweep(spec, s_or_p, b, k, n_samples, sizes, seed);
          py::dict out;
          out["sizes"] = rep.lattice_sizes;
          out["max_ratio"] = rep.max_ratio;
          out["median_ratio"] = rep.median_ratio;
          return out;
        },
        py::arg("family"), py::arg("s_or_p"), py::arg("b"), py::arg("k") = -1,
        py::arg("n_samples") = 40, py::arg("sizes") = std::vector<int>{16, 32},
        py::arg("seed") = 1,
        "Randomized lower-bound probe of the multiplier norm across lattice sizes.");

  m.def("two_center_bound",
        [](double rho, double gamma, double c1, double c2) {
          const Lemma1Report rep = lemma1_check(rho, gamma, {{c1, c2}});
          const CenterPairSample& s = rep.samples.front();
          py::dict out;
          out["lhs"] = s.lhs;
          out["rhs"] = s.rhs;
          out["constant"] = s.constant;
          return out;
        },
        py::arg("rho"), py::arg("gamma"), py::arg("c1"), py::arg("c2"),
        "Quadrature check of the two-center weighted integral bound at one center pair.");

  m.def("poly_level_bound",
        [](const std::vector<double>& coeffs, double p) {
          const PolyBoundSample s = lemma23_check(coeffs, p);
          py::dict out;
          out["lhs"] = s.lhs;
          out["rhs"] = s.rhs;
          out["constant"] = s.constant;
          return out;
        },
        py::arg("coeffs"), py::arg("p"),
        "Quadrature check of the polynomial level-set bound, quadratic or cubic.");

  m.def("canonical_theta",
        [] { return theta_value(ABCDParams::canonical()).convert_to<double>(); },
        "Sixth-order coefficient produced by the reduction at canonical parameters.");

  m.def("reduction_residual_zero",
        [] {
          const ReductionResult canonical = verify_reduction(ABCDParams::canonical());
          const SymbolicReduction sym_run = verify_reduction_symbolic();
          return canonical.matches() && sym_run.residual.is_zero();
        },
        "True when the canonical replay and the fully symbolic replay both leave no residual.");
}
