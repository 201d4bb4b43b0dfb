#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gsobe/functionals.hpp"
#include "gsobe/rng.hpp"
#include "support/functional_oracle.hpp"

using namespace gsobe;

namespace {

SpaceTimeSpectrum random_spectrum(const LatticeSpec& lat, Rng& rng) {
  SpaceTimeSpectrum f(lat);
  for (auto& c : f.coeffs) c = complexd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return f;
}

std::vector<SpaceTimeSpectrum> random_legs(const LatticeSpec& lat, int arity,
                                           Rng& rng) {
  std::vector<SpaceTimeSpectrum> h;
  for (int j = 0; j < arity; ++j) h.push_back(random_spectrum(lat, rng));
  return h;
}

}  // namespace

TEST_CASE("functional spec: arity and family must agree") {
  FunctionalSpec spec;
  spec.family = FunctionalFamily::quadrilinear;
  spec.arity = 3;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.arity = 4;
  CHECK_NOTHROW(spec.validate());
  spec.family = FunctionalFamily::bilinear_uvxx;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.arity = 5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK(family_arity(FunctionalFamily::bilinear_x2) == 3);
  CHECK(family_arity(FunctionalFamily::quadrilinear) == 4);
}

TEST_CASE("default modulation caps sit above 1/2 in the working ranges") {
  CHECK(default_b0(FunctionalFamily::bilinear_x2, 0.6) ==
        doctest::Approx(0.55).epsilon(1e-15));
  CHECK(default_b0(FunctionalFamily::bilinear_x4, 0.75) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(default_b0(FunctionalFamily::bilinear_uvxx, 0.55) == 0.55);
  CHECK(default_b0(FunctionalFamily::quadrilinear, 0.6) == 0.6);
  for (double p : {0.58, 0.65, 0.74}) {
    CHECK(default_b0(FunctionalFamily::bilinear_x2, p) > 0.5);
  }
}

TEST_CASE("leg weights: pinned structure") {
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x2;
  spec.arity = 3;
  spec.exponent = 0.0;
  spec.b = 0.5;
  // at xi=0, tau=0 the modulation distance vanishes and brackets are 1
  CHECK(leg_weight(spec, 0, 0.0, 0.0, -1) == 1.0);
  CHECK(leg_weight(spec, 2, 0.0, 0.0, -1) == 0.0);  // |xi3| factor
  // final leg of the uvxx family carries |xi|<xi>^{s-2}
  FunctionalSpec uv;
  uv.family = FunctionalFamily::bilinear_uvxx;
  uv.arity = 3;
  uv.exponent = 0.5;
  uv.b = 0.5;
  const double xi = 2.0;
  const double want = xi * std::pow(jbracket(xi), 0.5 - 2.0) /
                      modulation_weight(0.0, xi, 0.5, -1, WeightVariant::cubic);
  CHECK(leg_weight(uv, 2, xi, 0.0, -1) == doctest::Approx(want).epsilon(1e-14));
  // middle leg carries xi^2
  const double want1 = xi * xi * std::pow(jbracket(xi), -0.5) /
                       modulation_weight(0.0, xi, 0.5, -1, WeightVariant::cubic);
  CHECK(leg_weight(uv, 1, xi, 0.0, -1) == doctest::Approx(want1).epsilon(1e-14));
  CHECK_THROWS_AS(leg_weight(spec, 3, 1.0, 1.0, -1), std::invalid_argument);
  CHECK_THROWS_AS(leg_weight(spec, -1, 1.0, 1.0, -1), std::invalid_argument);
}

TEST_CASE("multilinear functional: structural validation") {
  const LatticeSpec lat(8, 8, 0.7, 1.3);
  const LatticeSpec other(8, 8, 0.7, 1.4);
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x2;
  spec.arity = 3;
  spec.exponent = 0.5;
  spec.b = 0.55;
  Rng rng(0xfeed01u);
  auto h = random_legs(lat, 3, rng);
  CHECK_NOTHROW(multilinear_functional(h, spec, -1));
  h.pop_back();
  CHECK_THROWS_AS(multilinear_functional(h, spec, -1), std::invalid_argument);
  h.push_back(random_spectrum(other, rng));
  CHECK_THROWS_AS(multilinear_functional(h, spec, -1), std::invalid_argument);
  h.pop_back();
  h.push_back(random_spectrum(lat, rng));
  CHECK_THROWS_AS(multilinear_functional(h, spec, 0), std::invalid_argument);
}

TEST_CASE("multilinear functional: zero factor annihilates") {
  const LatticeSpec lat(8, 8, 0.7, 1.3);
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x4;
  spec.arity = 3;
  spec.exponent = 0.6;
  spec.b = 0.55;
  Rng rng(0xfeed02u);
  auto h = random_legs(lat, 3, rng);
  h[1] = SpaceTimeSpectrum(lat);
  CHECK(multilinear_functional(h, spec, -1) == 0.0);
}

TEST_CASE("multilinear functional: single compatible incidence") {
  const LatticeSpec lat(8, 8, 0.7, 1.3);
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x2;
  spec.arity = 3;
  spec.exponent = 0.7;
  spec.b = 0.55;
  // modes (1,2) + (2,-3) + (-3,1) sum to zero in both variables
  std::vector<SpaceTimeSpectrum> h(3, SpaceTimeSpectrum(lat));
  h[0].at(1, 2) = 2.0;
  h[1].at(2, 5) = 0.5;   // slot 5 is mode -3
  h[2].at(5, 1) = 4.0;   // slot 5 is mode -3
  const double w = leg_weight(spec, 0, 1 * 0.7, 2 * 1.3, -1) *
                   leg_weight(spec, 1, 2 * 0.7, -3 * 1.3, -1) *
                   leg_weight(spec, 2, -3 * 0.7, 1 * 1.3, -1);
  const double measure = std::pow(0.7 * 1.3, 2);
  const double got = multilinear_functional(h, spec, -1);
  CHECK(got == doctest::Approx(2.0 * 0.5 * 4.0 * w * measure).epsilon(1e-12));

  // breaking the frequency sum kills the incidence
  std::vector<SpaceTimeSpectrum> bad(3, SpaceTimeSpectrum(lat));
  bad[0].at(1, 2) = 2.0;
  bad[1].at(2, 5) = 0.5;
  bad[2].at(2, 1) = 4.0;  // mode 2 instead of -3
  CHECK(std::abs(multilinear_functional(bad, spec, -1)) < 1e-15);
}

TEST_CASE("convolution path equals direct enumeration, arity 3") {
  const LatticeSpec lat(8, 8, 0.7, 1.3);
  Rng rng(0xfeed03u);
  for (auto family : {FunctionalFamily::bilinear_x2, FunctionalFamily::bilinear_x4,
                      FunctionalFamily::bilinear_uvxx}) {
    FunctionalSpec spec;
    spec.family = family;
    spec.arity = 3;
    spec.exponent = family == FunctionalFamily::bilinear_uvxx ? 0.6 : 0.7;
    spec.b = 0.55;
    for (int k : {1, -1}) {
      auto h = random_legs(lat, 3, rng);
      const double fast = multilinear_functional(h, spec, k);
      const double slow = oracle::functional_by_enumeration(h, spec, k);
      CHECK(std::abs(fast - slow) <= 1e-12 * std::max(1.0, std::abs(slow)));
      CHECK(fast >= 0.0);
    }
  }
}

TEST_CASE("convolution path equals direct enumeration, arity 4") {
  const LatticeSpec lat(6, 6, 0.9, 1.7);
  Rng rng(0xfeed04u);
  FunctionalSpec spec;
  spec.family = FunctionalFamily::quadrilinear;
  spec.arity = 4;
  spec.exponent = 0.6;
  spec.b = 0.51;
  for (int k : {1, -1}) {
    auto h = random_legs(lat, 4, rng);
    const double fast = multilinear_functional(h, spec, k);
    const double slow = oracle::functional_by_enumeration(h, spec, k);
    CHECK(std::abs(fast - slow) <= 1e-12 * std::max(1.0, std::abs(slow)));
  }
}

TEST_CASE("multilinear functional: homogeneous and additive in each leg") {
  const LatticeSpec lat(8, 8, 0.5, 1.1);
  Rng rng(0xfeed05u);
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x2;
  spec.arity = 3;
  spec.exponent = 0.65;
  spec.b = 0.55;
  auto h = random_legs(lat, 3, rng);
  const double base = multilinear_functional(h, spec, -1);

  // |c h| scaling: complex factor of modulus 2
  auto scaled = h;
  for (auto& c : scaled[1].coeffs) c *= complexd{-1.2, 1.6};
  const double got = multilinear_functional(scaled, spec, -1);
  CHECK(std::abs(got - 2.0 * base) <= 1e-12 * std::max(1.0, std::abs(base)));

  // additivity over nonnegative data in one leg
  std::vector<SpaceTimeSpectrum> u(3, SpaceTimeSpectrum(lat));
  std::vector<SpaceTimeSpectrum> v(3, SpaceTimeSpectrum(lat));
  for (int j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < u[j].coeffs.size(); ++i) {
      u[j].coeffs[i] = rng.uniform();
      v[j].coeffs[i] = u[j].coeffs[i];
    }
  }
  std::vector<SpaceTimeSpectrum> sum = u;
  for (std::size_t i = 0; i < u[2].coeffs.size(); ++i) {
    v[2].coeffs[i] = rng.uniform();
    sum[2].coeffs[i] = u[2].coeffs[i] + v[2].coeffs[i];
  }
  const double fu = multilinear_functional(u, spec, -1);
  const double fv = multilinear_functional(v, spec, -1);
  const double fs = multilinear_functional(sum, spec, -1);
  CHECK(std::abs(fs - fu - fv) <= 1e-12 * std::max(1.0, std::abs(fs)));
}

TEST_CASE("symmetric legs of the x2 family commute") {
  const LatticeSpec lat(8, 8, 0.7, 1.3);
  Rng rng(0xfeed06u);
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x2;
  spec.arity = 3;
  spec.exponent = 0.7;
  spec.b = 0.55;
  auto h = random_legs(lat, 3, rng);
  const double a = multilinear_functional(h, spec, -1);
  std::swap(h[0], h[1]);
  const double b = multilinear_functional(h, spec, -1);
  CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
}

TEST_CASE("constant sweep: shape, determinism, basic sanity") {
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x2;
  spec.arity = 3;
  const std::vector<int> sizes = {8, 16};
  const EstimateReport r1 = constant_sweep(spec, 0.0, 0.55, -1, 6, sizes, 42);
  const EstimateReport r2 = constant_sweep(spec, 0.0, 0.55, -1, 6, sizes, 42);
  CHECK(r1.samples.size() == 12);
  CHECK(r1.max_ratio.size() == 2);
  CHECK(r1.median_ratio.size() == 2);
  for (std::size_t i = 0; i < r1.samples.size(); ++i) {
    CHECK(std::isfinite(r1.samples[i].ratio));
    CHECK(r1.samples[i].ratio >= 0.0);
    CHECK(r1.samples[i].ratio == r2.samples[i].ratio);
  }
  for (std::size_t i = 0; i < r1.max_ratio.size(); ++i) {
    CHECK(r1.median_ratio[i] <= r1.max_ratio[i]);
    CHECK(r1.max_ratio[i] > 0.0);
  }
  CHECK(r1.spec.exponent == 0.0);
  CHECK(r1.spec.b == 0.55);
  CHECK_THROWS_AS(constant_sweep(spec, 0.0, 0.55, -1, 0, sizes, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(constant_sweep(spec, 0.0, 0.55, -1, 4, {}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(constant_sweep(spec, 0.0, 0.55, -1, 4, {7}, 1),
                  std::invalid_argument);
}

TEST_CASE("constant sweep: refinement does not inflate the x2 ratios") {
  FunctionalSpec spec;
  spec.family = FunctionalFamily::bilinear_x2;
  spec.arity = 3;
  const EstimateReport r = constant_sweep(spec, 0.0, 0.55, -1, 8, {16, 32}, 7);
  CHECK(r.max_ratio[0] > 0.0);
  CHECK(r.max_ratio[1] <= 1.25 * r.max_ratio[0]);
  CHECK(r.max_ratio[1] < 50.0);
}

TEST_CASE("constant sweep: quadrilinear smoke") {
  FunctionalSpec spec;
  spec.family = FunctionalFamily::quadrilinear;
  spec.arity = 4;
  const EstimateReport r = constant_sweep(spec, 0.75, 0.51, -1, 4, {8}, 11);
  CHECK(r.samples.size() == 4);
  for (const auto& s : r.samples) {
    CHECK(std::isfinite(s.ratio));
    CHECK(s.ratio >= 0.0);
  }
}
