#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsobe/dispersion.hpp"
#include "gsobe/lemmas.hpp"
#include "gsobe/rng.hpp"

using namespace gsobe;

TEST_CASE("adaptive_simpson on smooth integrands") {
  const double s = adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                                    std::numbers::pi, 1e-12);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-10));
  const double q =
      adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(q == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("integrate_line reproduces closed-form whole-line integrals") {
  // int exp(-x^2) dx = sqrt(pi)
  const double g = integrate_line(
      [](double x) { return std::exp(-x * x); }, 1e-11, {0.0});
  CHECK(g == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-9));
  // int <x>^-3 dx = int (1+x^2)^(-3/2) dx = 2
  const double c = integrate_line(
      [](double x) { return std::pow(jbracket(x), -3.0); }, 1e-11, {0.0});
  CHECK(c == doctest::Approx(2.0).epsilon(1e-9));
  // splits far outside the mass should not change the answer
  const double c2 = integrate_line(
      [](double x) { return std::pow(jbracket(x), -3.0); }, 1e-11,
      {-1e6, 3.0, 1e9});
  CHECK(c2 == doctest::Approx(c).epsilon(1e-9));
}

TEST_CASE("phi_rho branches") {
  CHECK(phi_rho(2.0, 123.0) == 1.0);
  CHECK(phi_rho(1.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  const double a = 7.5;
  CHECK(phi_rho(0.8, a) ==
        doctest::Approx(std::pow(jbracket(a), 0.2)).epsilon(1e-14));
}

TEST_CASE("lemma1_check coincident centers pin the constant") {
  // rho=2, gamma=1, c1=c2=0: lhs = int <x>^-3 dx = 2, rhs = 1.
  const auto report = lemma1_check(2.0, 1.0, {{0.0, 0.0}});
  REQUIRE(report.samples.size() == 1);
  CHECK(report.samples[0].lhs == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(report.samples[0].rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(report.max_constant == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(report.stable);
}

TEST_CASE("lemma1_check constants stay bounded across random center batches") {
  Rng rng(2024);
  auto draw_batch = [&rng](int count) {
    std::vector<std::pair<double, double>> centers;
    for (int i = 0; i < count; ++i) {
      const double c1 = rng.uniform(-25.0, 25.0);
      const double c2 = c1 - rng.uniform(-50.0, 50.0);
      centers.emplace_back(c1, c2);
    }
    return centers;
  };
  const auto a = lemma1_check(2.0, 1.0, draw_batch(100));
  const auto b = lemma1_check(2.0, 1.0, draw_batch(100));
  CHECK(a.stable);
  CHECK(b.stable);
  CHECK(a.max_constant > 0.0);
  CHECK(a.max_constant < 10.0);
  // Two independent batches should see the same extremal constant.
  const double hi = std::max(a.max_constant, b.max_constant);
  CHECK(std::abs(a.max_constant - b.max_constant) <= 0.10 * hi);
  for (const auto& s : a.samples) CHECK(s.constant > 0.0);
}

TEST_CASE("lemma1_check logarithmic branch at rho = 1") {
  Rng rng(77);
  std::vector<std::pair<double, double>> centers;
  for (int i = 0; i < 60; ++i) {
    centers.emplace_back(rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0));
  }
  const auto report = lemma1_check(1.0, 0.5, centers);
  CHECK(report.stable);
  CHECK(report.max_constant < 20.0);
  for (const auto& s : report.samples) {
    const double diff = s.c1 - s.c2;
    const double rhs =
        std::pow(jbracket(diff), -0.5) * std::log1p(jbracket(diff));
    CHECK(s.rhs == doctest::Approx(rhs).epsilon(1e-13));
    CHECK(s.constant > 0.0);
  }
}

TEST_CASE("lemma1_check rejects out-of-range exponents") {
  const std::vector<std::pair<double, double>> one = {{0.0, 1.0}};
  CHECK_THROWS_AS(lemma1_check(0.5, 0.8, one), std::invalid_argument);
  CHECK_THROWS_AS(lemma1_check(2.0, -0.1, one), std::invalid_argument);
  CHECK_THROWS_AS(lemma1_check(0.5, 0.5, one), std::invalid_argument);
  CHECK_THROWS_AS(lemma1_check(2.0, 1.0, {}), std::invalid_argument);
}

TEST_CASE("lemma23_check quadratic spot value") {
  // int dx / <x^2>^2 = int dx / (1+x^4) = pi / sqrt(2), rhs = 1.
  const auto s = lemma23_check({0.0, 0.0, 1.0}, 2.0);
  CHECK(s.lhs ==
        doctest::Approx(std::numbers::pi / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(s.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.constant == doctest::Approx(2.2214414690791831).epsilon(1e-8));
}

TEST_CASE("lemma23_check quadratic rhs switches at p = 1") {
  // p <= 1 drops the vertex-level weight.
  const auto lo = lemma23_check({5.0, 0.0, 2.0}, 0.75);
  CHECK(lo.rhs == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  const auto hi = lemma23_check({5.0, 0.0, 2.0}, 1.5);
  CHECK(hi.rhs ==
        doctest::Approx(1.0 / (std::sqrt(2.0) * std::sqrt(jbracket(5.0))))
            .epsilon(1e-14));
  // Lifting the parabola away from zero shrinks the integral.
  const auto base = lemma23_check({0.0, 0.0, 1.0}, 0.75);
  const auto lifted = lemma23_check({5.0, 0.0, 1.0}, 0.75);
  CHECK(lifted.lhs < base.lhs);
}

TEST_CASE("lemma23_check quadratic is shift invariant") {
  // (x - s)^2 + d expands to {s^2 + d, -2 s, 1}.
  const double d = 2.0;
  const auto at0 = lemma23_check({d, 0.0, 1.0}, 2.0);
  for (double shift : {3.0, -7.0, 40.0}) {
    const auto moved = lemma23_check({shift * shift + d, -2.0 * shift, 1.0}, 2.0);
    CHECK(moved.lhs == doctest::Approx(at0.lhs).epsilon(1e-7));
    CHECK(moved.rhs == doctest::Approx(at0.rhs).epsilon(1e-9));
  }
}

TEST_CASE("lemma23_check quadratic constants bounded over random batch") {
  Rng rng(5150);
  std::vector<double> constants;
  for (int i = 0; i < 100; ++i) {
    const double c2 =
        (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.1, 10.0);
    const std::vector<double> coeffs = {rng.uniform(-10.0, 10.0),
                                        rng.uniform(-10.0, 10.0), c2};
    const auto s = lemma23_check(coeffs, 2.0);
    CHECK(std::isfinite(s.constant));
    CHECK(s.constant > 0.0);
    constants.push_back(s.constant);
  }
  std::sort(constants.begin(), constants.end());
  const double median = 0.5 * (constants[49] + constants[50]);
  CHECK(constants.back() < 4.0);
  CHECK(constants.back() <= 10.0 * median);
}

TEST_CASE("lemma23_check cubic scaling in the leading coefficient") {
  // Pure cubic: substituting y = c3^(1/3) x makes lhs = |c3|^(-1/3) lhs(1),
  // so the constant must not move across {1, 8, 64}.
  const auto c1 = lemma23_check({0.0, 0.0, 0.0, 1.0}, 0.6);
  const auto c8 = lemma23_check({0.0, 0.0, 0.0, 8.0}, 0.6);
  const auto c64 = lemma23_check({0.0, 0.0, 0.0, 64.0}, 0.6);
  CHECK(c8.lhs == doctest::Approx(0.5 * c1.lhs).epsilon(1e-6));
  CHECK(c64.lhs == doctest::Approx(0.25 * c1.lhs).epsilon(1e-6));
  CHECK(c8.constant == doctest::Approx(c1.constant).epsilon(1e-6));
  CHECK(c64.constant == doctest::Approx(c1.constant).epsilon(1e-6));
  CHECK(c8.rhs == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("lemma23_check cubic constants bounded over random batch") {
  Rng rng(860);
  std::vector<double> constants;
  for (int i = 0; i < 100; ++i) {
    const double c3 =
        (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.2, 5.0);
    const std::vector<double> coeffs = {rng.uniform(-5.0, 5.0),
                                        rng.uniform(-5.0, 5.0),
                                        rng.uniform(-5.0, 5.0), c3};
    const auto s = lemma23_check(coeffs, 0.6);
    CHECK(std::isfinite(s.constant));
    CHECK(s.constant > 0.0);
    constants.push_back(s.constant);
  }
  std::sort(constants.begin(), constants.end());
  const double median = 0.5 * (constants[49] + constants[50]);
  CHECK(constants.back() <= 10.0 * median);
  // Nearly degenerate roots stay finite too: x (x^2 - eps).
  const auto tight = lemma23_check({0.0, -1e-4, 0.0, 1.0}, 0.6);
  CHECK(std::isfinite(tight.constant));
  // A fully factored cubic with separated roots: (x-1)(x-2)(x-3).
  const auto split = lemma23_check({-6.0, 11.0, -6.0, 1.0}, 0.6);
  CHECK(split.constant > 0.0);
  CHECK(std::isfinite(split.constant));
}

TEST_CASE("lemma23_check rejects malformed inputs") {
  CHECK_THROWS_AS(lemma23_check({1.0, 2.0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma23_check({1.0, 2.0, 3.0, 4.0, 5.0}, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(lemma23_check({1.0, 2.0, 0.0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma23_check({1.0, 2.0, 3.0, 0.0}, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(lemma23_check({0.0, 0.0, 1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lemma23_check({0.0, 0.0, 0.0, 1.0}, 1.0 / 3.0),
                  std::invalid_argument);
}
