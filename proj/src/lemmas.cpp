#include "gsobe/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gsobe/dispersion.hpp"

namespace gsobe {

namespace {

double simpson_slice(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_slice(fa, flm, fm, a, m);
  const double right = simpson_slice(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_slice(fa, fm, fb, a, b);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double integrate_line(const std::function<double(double)>& f, double tol,
                      const std::vector<double>& splits, double half_width) {
  std::vector<double> ts = {-half_width, half_width};
  for (double x : splits) {
    const double t = std::asinh(x);
    if (t > -half_width && t < half_width) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  auto g = [&f](double t) { return f(std::sinh(t)) * std::cosh(t); };
  const double seg_tol = tol / static_cast<double>(ts.size());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] < 1e-14) continue;
    total += adaptive_simpson(g, ts[i], ts[i + 1], seg_tol);
  }
  return total;
}

double phi_rho(double rho, double a) {
  if (rho > 1.0) return 1.0;
  if (rho == 1.0) return std::log1p(jbracket(a));
  return std::pow(jbracket(a), 1.0 - rho);
}

Lemma1Report lemma1_check(
    double rho, double gamma,
    const std::vector<std::pair<double, double>>& centers) {
  if (!(rho >= gamma) || !(gamma >= 0.0) || !(rho + gamma > 1.0)) {
    throw std::invalid_argument(
        "lemma1_check: need rho >= gamma >= 0 and rho + gamma > 1");
  }
  if (centers.empty()) {
    throw std::invalid_argument("lemma1_check: need at least one center pair");
  }
  Lemma1Report report;
  report.rho = rho;
  report.gamma = gamma;
  std::vector<double> ordered;
  for (const auto& [c1, c2] : centers) {
    auto f = [rho, gamma, c1 = c1, c2 = c2](double x) {
      return 1.0 / (std::pow(jbracket(x - c1), rho) *
                    std::pow(jbracket(x - c2), gamma));
    };
    const double lhs = integrate_line(f, 1e-10, {c1, c2});
    const double diff = c1 - c2;
    const double rhs = std::pow(jbracket(diff), -gamma) * phi_rho(rho, diff);
    const double constant = lhs / rhs;
    if (ordered.size() >= 8) {
      std::vector<double> sorted = ordered;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t m = sorted.size();
      const double median = m % 2 == 1
                                ? sorted[m / 2]
                                : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
      if (constant > 10.0 * median) report.stable = false;
    }
    ordered.push_back(constant);
    report.samples.push_back({c1, c2, lhs, rhs, constant});
    report.max_constant = std::max(report.max_constant, constant);
  }
  return report;
}

namespace {

// Segment boundaries for the level-set integrand: extrema plus real roots.
std::vector<double> poly_features(const std::vector<double>& c) {
  auto poly = [&c](double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  std::vector<double> out;
  if (c.size() == 3) {
    out.push_back(-c[1] / (2.0 * c[2]));
    const double disc = c[1] * c[1] - 4.0 * c[2] * c[0];
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      out.push_back((-c[1] + r) / (2.0 * c[2]));
      out.push_back((-c[1] - r) / (2.0 * c[2]));
    }
    return out;
  }
  std::vector<double> knots;
  const double qa = 3.0 * c[3];
  const double qb = 2.0 * c[2];
  const double qd = qb * qb - 4.0 * qa * c[1];
  if (qd >= 0.0) {
    const double r = std::sqrt(qd);
    knots.push_back((-qb + r) / (2.0 * qa));
    knots.push_back((-qb - r) / (2.0 * qa));
  }
  out = knots;
  double bound = 1.0;
  for (int i = 0; i < 3; ++i) bound = std::max(bound, std::abs(c[i] / c[3]));
  bound = 2.0 * (1.0 + bound);
  std::vector<double> edges = knots;
  edges.push_back(-bound);
  edges.push_back(bound);
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i];
    double hi = edges[i + 1];
    double flo = poly(lo);
    double fhi = poly(hi);
    if (flo == 0.0) out.push_back(lo);
    if (flo * fhi >= 0.0) continue;
    for (int it = 0; it < 120; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = poly(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (flo * fm < 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace

PolyBoundSample lemma23_check(const std::vector<double>& coeffs, double p) {
  if (coeffs.size() != 3 && coeffs.size() != 4) {
    throw std::invalid_argument(
        "lemma23_check: expect quadratic (3 coeffs) or cubic (4 coeffs)");
  }
  if (coeffs.back() == 0.0) {
    throw std::invalid_argument(
        "lemma23_check: leading coefficient must be nonzero");
  }
  const bool cubic = coeffs.size() == 4;
  if (cubic && !(p > 1.0 / 3.0)) {
    throw std::invalid_argument("lemma23_check: cubic bound needs p > 1/3");
  }
  if (!cubic && !(p > 0.5)) {
    throw std::invalid_argument("lemma23_check: quadratic bound needs p > 1/2");
  }

  auto poly = [&coeffs](double x) {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
  };
  auto f = [&poly, p](double x) { return std::pow(jbracket(poly(x)), -p); };

  PolyBoundSample sample;
  sample.coeffs = coeffs;
  sample.p = p;
  sample.lhs = integrate_line(f, 1e-10, poly_features(coeffs));
  if (cubic) {
    sample.rhs = std::pow(std::abs(coeffs[3]), -1.0 / 3.0);
  } else {
    const double vertex_level = coeffs[0] - coeffs[1] * coeffs[1] / (4.0 * coeffs[2]);
    sample.rhs = p > 1.0 ? 1.0 / (std::sqrt(std::abs(coeffs[2])) *
                                  std::sqrt(jbracket(vertex_level)))
                         : 1.0 / std::sqrt(std::abs(coeffs[2]));
  }
  sample.constant = sample.lhs / sample.rhs;
  return sample;
}

}  // namespace gsobe
