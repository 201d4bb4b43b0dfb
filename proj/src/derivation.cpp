#include "gsobe/derivation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gsobe/dispersion.hpp"
#include "gsobe/rng.hpp"

namespace gsobe {

ABCDParams::ABCDParams(Rational a_, Rational b_, Rational c_, Rational d_, Rational a1_,
                       Rational b1_, Rational c1_, Rational d1_)
    : a(std::move(a_)),
      b(std::move(b_)),
      c(std::move(c_)),
      d(std::move(d_)),
      a1(std::move(a1_)),
      b1(std::move(b1_)),
      c1(std::move(c1_)),
      d1(std::move(d1_)) {
  if (a + b + c + d != Rational(1, 3))
    throw std::invalid_argument("ABCDParams: a+b+c+d must equal 1/3");
}

ABCDParams ABCDParams::on_constraint(Rational a, Rational b, Rational c, Rational a1, Rational b1,
                                     Rational c1, Rational d1) {
  Rational d = Rational(1, 3) - a - b - c;
  return ABCDParams(std::move(a), std::move(b), std::move(c), std::move(d), std::move(a1),
                    std::move(b1), std::move(c1), std::move(d1));
}

ABCDParams ABCDParams::canonical() {
  const Rational q(1, 12);
  return ABCDParams(q, q, q, q);
}

std::array<Rational, sym::kNumParams> ABCDParams::free_values() const {
  return {a, b, c, a1, b1, c1, d1};
}

std::string ABCDParams::str() const {
  std::ostringstream os;
  os << "a=" << a << " b=" << b << " c=" << c << " d=" << d << " a1=" << a1 << " b1=" << b1
     << " c1=" << c1 << " d1=" << d1;
  return os.str();
}

ReductionResult verify_reduction(const ABCDParams& params) {
  const auto set = detail::value_set(params);
  ReductionResult out;
  out.reduced = reduce_system(set);
  out.theta = out.reduced.coefficient(
      [] {
        auto m = sym::Monomial::field(sym::FieldSym::eta, 6, 0);
        m.bdeg = 2;
        return m;
      }());
  out.residual = out.reduced - golden_target(theta_closed_form(set));
  return out;
}

SymbolicReduction verify_reduction_symbolic() {
  const auto set = detail::symbolic_set();
  SymbolicReduction out;
  out.reduced = reduce_system(set);
  out.theta = out.reduced.coefficient(
      [] {
        auto m = sym::Monomial::field(sym::FieldSym::eta, 6, 0);
        m.bdeg = 2;
        return m;
      }());
  out.residual = out.reduced - golden_target(theta_closed_form(set));
  return out;
}

Rational theta_value(const ABCDParams& params) {
  return theta_closed_form(detail::value_set(params));
}

ThetaSignReport sample_theta_signs(int n, std::uint64_t seed) {
  Rng rng(seed);
  ThetaSignReport report;
  int kept_pos = 0, kept_neg = 0;
  for (int i = 0; i < n; ++i) {
    auto draw = [&rng] {
      return Rational(rng.uniform_int(-6, 6), rng.uniform_int(1, 9));
    };
    const ABCDParams p = ABCDParams::on_constraint(draw(), draw(), draw(), draw(), draw(), draw(),
                                                   draw());
    const Rational th = theta_value(p);
    if (th < 0) {
      ++report.negative;
      if (kept_neg++ < 3) report.examples.push_back({p, th});
    } else if (th == 0) {
      ++report.zero;
    } else {
      ++report.positive;
      if (kept_pos++ < 3) report.examples.push_back({p, th});
    }
  }
  return report;
}

EquationCoefficients reduced_equation_coefficients(double alpha, double beta, double theta) {
  return {-1.0,
          -beta / 3.0,
          beta * beta * theta,
          -1.5 * alpha,
          -alpha * beta / 3.0,
          -2.0 * alpha * beta / 3.0,
          -0.5 * alpha * alpha};
}

EquationCoefficients canonical_equation_coefficients(int k) {
  require_k(k);
  return {-1.0, double(k), -1.0, -1.0, -1.0, -1.0, -1.0};
}

RescaleResult solve_rescaling(const EquationCoefficients& source,
                              const EquationCoefficients& target) {
  struct Row {
    const char* name;
    int el, em, en;  // exponents of lambda, mu, nu in target/source
    double src, tgt;
  };
  const std::array<Row, 7> rows{{{"xx", 0, -2, 2, source.xx, target.xx},
                                 {"x4", 0, -4, 2, source.x4, target.x4},
                                 {"x6", 0, -6, 2, source.x6, target.x6},
                                 {"quad", -1, -2, 2, source.quad, target.quad},
                                 {"quad4", -1, -4, 2, source.quad4, target.quad4},
                                 {"mix", -1, -4, 2, source.mix, target.mix},
                                 {"cubic", -2, -2, 2, source.cubic, target.cubic}}};

  RescaleResult best;
  best.feasible = false;
  best.max_log_residual = std::numeric_limits<double>::infinity();
  if (source.mix != 0.0) best.invariant_source = source.quad4 / source.mix;
  if (target.mix != 0.0) best.invariant_target = target.quad4 / target.mix;

  for (const double lam_sign : {1.0, -1.0}) {
    // accumulate A x = b over active rows, x = (log|lambda|, log mu, log nu)
    std::vector<std::array<double, 3>> A;
    std::vector<double> b;
    bool sign_ok = true;
    std::string blocker;
    for (const auto& row : rows) {
      if (row.src == 0.0 && row.tgt == 0.0) continue;
      if (row.src == 0.0 || row.tgt == 0.0) {
        sign_ok = false;
        blocker = std::string("term '") + row.name + "' present on one side only";
        break;
      }
      const double f = row.tgt / row.src;
      const double want = (lam_sign < 0.0 && (row.el % 2 != 0)) ? -1.0 : 1.0;
      if ((f > 0.0 ? 1.0 : -1.0) != want) {
        sign_ok = false;
        blocker = std::string("sign of term '") + row.name + "' unreachable";
        break;
      }
      A.push_back({double(row.el), double(row.em), double(row.en)});
      b.push_back(std::log(std::abs(f)));
    }
    if (!sign_ok) {
      if (!std::isfinite(best.max_log_residual) && best.note.empty()) best.note = blocker;
      continue;
    }
    // normal equations
    double N[3][3] = {}, r[3] = {};
    for (std::size_t i = 0; i < A.size(); ++i) {
      for (int p = 0; p < 3; ++p) {
        r[p] += A[i][p] * b[i];
        for (int q = 0; q < 3; ++q) N[p][q] += A[i][p] * A[i][q];
      }
    }
    const double det = N[0][0] * (N[1][1] * N[2][2] - N[1][2] * N[2][1]) -
                       N[0][1] * (N[1][0] * N[2][2] - N[1][2] * N[2][0]) +
                       N[0][2] * (N[1][0] * N[2][1] - N[1][1] * N[2][0]);
    if (std::abs(det) < 1e-12) continue;
    auto solve3 = [&](int col) {
      double C[3][3];
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) C[p][q] = q == col ? r[p] : N[p][q];
      return (C[0][0] * (C[1][1] * C[2][2] - C[1][2] * C[2][1]) -
              C[0][1] * (C[1][0] * C[2][2] - C[1][2] * C[2][0]) +
              C[0][2] * (C[1][0] * C[2][1] - C[1][1] * C[2][0])) /
             det;
    };
    const double x0 = solve3(0), x1 = solve3(1), x2 = solve3(2);
    double worst = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i)
      worst = std::max(worst, std::abs(A[i][0] * x0 + A[i][1] * x1 + A[i][2] * x2 - b[i]));
    if (worst < best.max_log_residual) {
      best.max_log_residual = worst;
      best.lambda = lam_sign * std::exp(x0);
      best.mu = std::exp(x1);
      best.nu = std::exp(x2);
      best.feasible = worst < 1e-9;
      if (!best.feasible) {
        std::ostringstream os;
        os << "no scaling closes the system (max log residual " << worst
           << "); quad4/mix ratio is scaling-invariant: source " << best.invariant_source
           << " vs target " << best.invariant_target;
        best.note = os.str();
      } else {
        best.note.clear();
      }
    }
  }
  return best;
}

}  // namespace gsobe
