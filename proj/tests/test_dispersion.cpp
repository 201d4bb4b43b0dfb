#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gsobe/cutoff.hpp"
#include "gsobe/dispersion.hpp"
#include "gsobe/rng.hpp"

using namespace gsobe;

TEST_CASE("dispersion symbol: pinned values and basic shape") {
  CHECK(dispersion_symbol(0.0, 1) == 0.0);
  CHECK(dispersion_symbol(0.0, -1) == 0.0);
  CHECK(dispersion_symbol(1.0, -1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dispersion_symbol(2.0, 1) == doctest::Approx(std::sqrt(84.0)).epsilon(1e-15));
  CHECK(dispersion_symbol(2.0, -1) == doctest::Approx(std::sqrt(52.0)).epsilon(1e-15));
  CHECK_THROWS_AS(dispersion_symbol(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(dispersion_symbol(1.0, 2), std::invalid_argument);
}

TEST_CASE("dispersion symbol: even, real, strictly increasing in |xi|") {
  for (int k : {1, -1}) {
    double prev = -1.0;
    for (int i = 0; i <= 4000; ++i) {
      const double xi = i * 2.5e-3 * 8.0;  // [0, 80]
      const double p = dispersion_symbol(xi, k);
      CHECK(std::isfinite(p));
      CHECK(p >= 0.0);
      CHECK(dispersion_symbol(-xi, k) == p);
      if (i > 0) CHECK(p > prev);
      prev = p;
    }
  }
}

TEST_CASE("dispersion symbol: cubic asymptotics") {
  for (int k : {1, -1}) {
    const double xi = 300.0;
    const double ratio = dispersion_symbol(xi, k) / (xi * xi * xi);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("v2 multiplier: removable zero, symmetry, decay") {
  CHECK(v2_multiplier(0.0, 1) == 0.0);
  CHECK(v2_multiplier(0.0, -1) == 0.0);
  CHECK(v2_multiplier(1e-12, -1) == doctest::Approx(1e-12).epsilon(1e-9));
  CHECK(v2_multiplier(1.0, -1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v2_multiplier(-3.0, 1) == v2_multiplier(3.0, 1));
  // ~ 1/|xi| for large frequencies
  CHECK(v2_multiplier(100.0, -1) * 100.0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("v2 multiplier: global bounds") {
  // k=+1: maximum 1/sqrt(3) at xi^2 = 1; k=-1: maximum 1 at xi = +-1.
  for (int k : {1, -1}) {
    const double bound = k == 1 ? 1.0 / std::sqrt(3.0) : 1.0;
    double seen = 0.0;
    for (int i = -6000; i <= 6000; ++i) {
      const double v = v2_multiplier(i * 5e-3, k);
      CHECK(v <= bound + 1e-12);
      seen = std::max(seen, v);
    }
    CHECK(seen == doctest::Approx(bound).epsilon(1e-5));
  }
  CHECK(v2_multiplier(1.0, 1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("modulation weight: pinned example and variants") {
  // cubic variant, k=-1: |3| - 1 + 1/2 = 5/2, bracket sqrt(1+25/4)
  CHECK(modulation_weight(3.0, 1.0, 1.0, -1, WeightVariant::cubic) ==
        doctest::Approx(std::sqrt(29.0) / 2.0).epsilon(1e-15));
  // exact variant at the same point: |3| - phi(1) = 2
  CHECK(modulation_weight(3.0, 1.0, 1.0, -1, WeightVariant::exact) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  // b = 0 flattens everything
  CHECK(modulation_weight(7.3, -2.1, 0.0, 1, WeightVariant::exact) == 1.0);
  // weight is even in tau and xi
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const double tau = rng.uniform(-30.0, 30.0), xi = rng.uniform(-4.0, 4.0);
    const double w = modulation_weight(tau, xi, 0.7, -1, WeightVariant::cubic);
    CHECK(modulation_weight(-tau, xi, 0.7, -1, WeightVariant::cubic) == doctest::Approx(w));
    CHECK(modulation_weight(tau, -xi, 0.7, -1, WeightVariant::cubic) == doctest::Approx(w));
  }
}

TEST_CASE("exact and cubic modulation distances stay within 1 of each other") {
  // sup_xi |phi(xi) - (|xi|^3 + (k/2)|xi|)| is ~0.25 (k=+1) and ~0.62 (k=-1).
  for (int k : {1, -1}) {
    double worst = 0.0;
    for (int i = 0; i <= 400000; ++i) {
      const double xi = i * 1e-4;  // [0, 40]; gap peaks near |xi| ~ 0.6 and decays
      const double gap = std::abs(modulation_distance(0.0, xi, k, WeightVariant::exact) -
                                  modulation_distance(0.0, xi, k, WeightVariant::cubic));
      worst = std::max(worst, gap);
    }
    CHECK(worst <= 1.0);
    if (k == -1) CHECK(worst == doctest::Approx(0.61566).epsilon(1e-3));
    if (k == 1) CHECK(worst == doctest::Approx(0.23444).epsilon(1e-3));
  }
}

TEST_CASE("weight variants are equivalent up to 2^|b|") {
  Rng rng(29);
  for (int k : {1, -1}) {
    for (int rep = 0; rep < 4000; ++rep) {
      const double tau = rng.uniform(-80.0, 80.0);
      const double xi = rng.uniform(-4.5, 4.5);
      const double b = rng.uniform(-1.0, 1.0);
      const double we = modulation_weight(tau, xi, b, k, WeightVariant::exact);
      const double wc = modulation_weight(tau, xi, b, k, WeightVariant::cubic);
      const double cap = std::pow(2.0, std::abs(b));
      CHECK(we / wc <= cap + 1e-12);
      CHECK(wc / we <= cap + 1e-12);
    }
  }
}

TEST_CASE("cutoff: plateau, support, parity") {
  CutoffFn eta(1.0);
  CHECK(eta.value(0.0) == 1.0);
  CHECK(eta.value(0.999) == 1.0);
  CHECK(eta.value(-1.0) == 1.0);
  CHECK(eta.value(2.0) == 0.0);
  CHECK(eta.value(-2.4) == 0.0);
  CHECK(eta.value(1.5) == doctest::Approx(0.5).epsilon(1e-12));  // glue is symmetric
  for (double t : {0.3, 1.2, 1.7, 1.99, 3.0}) {
    CHECK(eta.value(-t) == eta.value(t));
    CHECK(eta.derivative(-t) == doctest::Approx(-eta.derivative(t)).epsilon(1e-12));
  }
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = eta.value(1.0 + i * 0.01);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    prev = v;
  }
  CHECK_THROWS_AS(CutoffFn(0.0), std::invalid_argument);
  CHECK_THROWS_AS(CutoffFn(-2.0), std::invalid_argument);
}

TEST_CASE("cutoff: scale rescales the plateau and derivative") {
  CutoffFn eta(0.25);
  CHECK(eta.value(0.2) == 1.0);
  CHECK(eta.value(0.3) < 1.0);
  CHECK(eta.value(0.51) == 0.0);
  CutoffFn unit(1.0);
  CHECK(eta.value(0.4) == doctest::Approx(unit.value(1.6)).epsilon(1e-14));
  CHECK(eta.derivative(0.4) == doctest::Approx(4.0 * unit.derivative(1.6)).epsilon(1e-12));
}

TEST_CASE("cutoff: analytic derivative matches central differences") {
  CutoffFn eta(1.0);
  const double h = 1e-6;
  for (double t = -2.2; t <= 2.2; t += 0.013) {
    const double fd = (eta.value(t + h) - eta.value(t - h)) / (2.0 * h);
    CHECK(eta.derivative(t) == doctest::Approx(fd).epsilon(5e-5));
  }
}
