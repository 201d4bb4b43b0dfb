#pragma once

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsobe::sym {

using Rational = boost::multiprecision::cpp_rational;

/// Free model parameters carried through the symbolic run. The fourth linear
/// coefficient is eliminated up front via the budget constraint, so only
/// seven remain.
inline constexpr int kNumParams = 7;
inline constexpr std::array<const char*, kNumParams> kParamNames{
    "a", "b", "c", "a1", "b1", "c1", "d1"};

/// Sparse multivariate polynomial in the seven model parameters with exact
/// rational coefficients.
class ParamPoly {
 public:
  using Exponents = std::array<std::uint8_t, kNumParams>;

  ParamPoly() = default;
  ParamPoly(int v) : ParamPoly(Rational(v)) {}  // NOLINT: implicit by design
  ParamPoly(Rational v) {                       // NOLINT
    if (v != 0) terms_[Exponents{}] = std::move(v);
  }
  static ParamPoly variable(int index) {
    if (index < 0 || index >= kNumParams) throw std::invalid_argument("ParamPoly: bad variable index");
    ParamPoly p;
    Exponents e{};
    e[static_cast<std::size_t>(index)] = 1;
    p.terms_[e] = 1;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
  }
  Rational constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("ParamPoly: not a constant");
    return terms_.begin()->second;
  }

  ParamPoly& operator+=(const ParamPoly& o) {
    for (const auto& [e, v] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, v);
      } else if ((it->second += v) == 0) {
        terms_.erase(it);
      }
    }
    return *this;
  }
  ParamPoly& operator-=(const ParamPoly& o) { return *this += -o; }
  ParamPoly operator-() const {
    ParamPoly r(*this);
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
  }
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    for (const auto& [ea, va] : a.terms_)
      for (const auto& [eb, vb] : b.terms_) {
        Exponents e;
        for (int i = 0; i < kNumParams; ++i) {
          const unsigned s = unsigned(ea[static_cast<std::size_t>(i)]) + eb[static_cast<std::size_t>(i)];
          if (s > 255) throw std::overflow_error("ParamPoly: exponent overflow");
          e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(s);
        }
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          r.terms_.emplace(e, va * vb);
        } else if ((it->second += va * vb) == 0) {
          r.terms_.erase(it);
        }
      }
    return r;
  }
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
  void divide_by(const Rational& r) {
    if (r == 0) throw std::invalid_argument("ParamPoly: division by zero");
    for (auto& [e, v] : terms_) v /= r;
  }
  bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

  Rational eval(const std::array<Rational, kNumParams>& vals) const {
    Rational total = 0;
    for (const auto& [e, v] : terms_) {
      Rational t = v;
      for (int i = 0; i < kNumParams; ++i)
        for (int p = 0; p < e[static_cast<std::size_t>(i)]; ++p) t *= vals[static_cast<std::size_t>(i)];
      total += t;
    }
    return total;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << v;
      for (int i = 0; i < kNumParams; ++i) {
        const int p = e[static_cast<std::size_t>(i)];
        if (p == 0) continue;
        os << "*" << kParamNames[static_cast<std::size_t>(i)];
        if (p > 1) os << "^" << p;
      }
    }
    return os.str();
  }

 private:
  std::map<Exponents, Rational> terms_;
};

inline bool coeff_is_zero(const Rational& r) { return r == 0; }
inline bool coeff_is_zero(const ParamPoly& p) { return p.is_zero(); }
inline bool coeff_is_constant(const Rational&) { return true; }
inline bool coeff_is_constant(const ParamPoly& p) { return p.is_constant(); }
inline Rational coeff_constant_value(const Rational& r) { return r; }
inline Rational coeff_constant_value(const ParamPoly& p) { return p.constant_value(); }
inline Rational coeff_divided(const Rational& v, const Rational& by) { return v / by; }
inline ParamPoly coeff_divided(ParamPoly v, const Rational& by) {
  v.divide_by(by);
  return v;
}
inline std::string coeff_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}
inline std::string coeff_str(const ParamPoly& p) { return p.str(); }

/// The two fields of the coupled first-order system.
enum class FieldSym : std::uint8_t { eta, w };

/// One differentiated field occurrence: d_x^xo d_t^to applied to the symbol.
struct Factor {
  FieldSym sym = FieldSym::eta;
  std::uint8_t xo = 0;
  std::uint8_t to = 0;
  auto operator<=>(const Factor&) const = default;
};

/// Commutative product of factors together with the powers of the two small
/// parameters (alpha, beta).
struct Monomial {
  std::uint8_t adeg = 0;
  std::uint8_t bdeg = 0;
  std::vector<Factor> factors;  // kept sorted

  static Monomial unit(int a = 0, int b = 0) {
    Monomial m;
    m.adeg = static_cast<std::uint8_t>(a);
    m.bdeg = static_cast<std::uint8_t>(b);
    return m;
  }
  static Monomial field(FieldSym s, int xo = 0, int to = 0) {
    Monomial m;
    m.factors.push_back(Factor{s, static_cast<std::uint8_t>(xo), static_cast<std::uint8_t>(to)});
    return m;
  }

  void normalize() { std::sort(factors.begin(), factors.end()); }
  int small_degree() const { return adeg + bdeg; }
  int time_order() const {
    int n = 0;
    for (const auto& f : factors) n += f.to;
    return n;
  }
  bool has_time_derivative() const {
    return std::any_of(factors.begin(), factors.end(), [](const Factor& f) { return f.to > 0; });
  }
  bool contains(FieldSym s) const {
    return std::any_of(factors.begin(), factors.end(), [s](const Factor& f) { return f.sym == s; });
  }

  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.adeg != y.adeg) return x.adeg < y.adeg;
    if (x.bdeg != y.bdeg) return x.bdeg < y.bdeg;
    return x.factors < y.factors;
  }
  bool operator==(const Monomial&) const = default;

  std::string str() const {
    std::ostringstream os;
    bool need_sep = false;
    auto sep = [&] {
      if (need_sep) os << "*";
      need_sep = true;
    };
    if (adeg > 0) {
      sep();
      os << "alpha" << (adeg > 1 ? "^" + std::to_string(adeg) : "");
    }
    if (bdeg > 0) {
      sep();
      os << "beta" << (bdeg > 1 ? "^" + std::to_string(bdeg) : "");
    }
    for (const auto& f : factors) {
      sep();
      os << (f.sym == FieldSym::eta ? "eta" : "w");
      if (f.xo > 0 || f.to > 0) {
        os << "_";
        for (int i = 0; i < f.xo; ++i) os << "x";
        for (int i = 0; i < f.to; ++i) os << "t";
      }
    }
    if (!need_sep) os << "1";
    return os.str();
  }
};

enum class Var { x, t };

/// Truncation rule: monomials whose combined small-parameter degree reaches
/// `drop_at` are discarded.
struct OrderIdeal {
  int drop_at = 3;
};

/// Differential polynomial: exact-coefficient linear combination of
/// Monomials, closed under ring operations, differentiation, truncation and
/// substitution. Coeff is Rational or ParamPoly.
template <class Coeff>
class DiffPoly {
 public:
  using TermMap = std::map<Monomial, Coeff>;

  DiffPoly() = default;

  static DiffPoly term(Coeff c, Monomial m) {
    DiffPoly p;
    m.normalize();
    if (!coeff_is_zero(c)) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }
  static DiffPoly field(FieldSym s, int xo = 0, int to = 0) {
    return term(Coeff(1), Monomial::field(s, xo, to));
  }
  static DiffPoly constant(Coeff c) { return term(std::move(c), Monomial::unit()); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  DiffPoly& operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  DiffPoly& operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) {
      Coeff neg = Coeff(0);
      neg -= c;
      add_term(m, neg);
    }
    return *this;
  }
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  DiffPoly operator-() const {
    DiffPoly r;
    for (const auto& [m, c] : terms_) {
      Coeff neg = Coeff(0);
      neg -= c;
      r.terms_.emplace(m, std::move(neg));
    }
    return r;
  }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        const unsigned ad = unsigned(ma.adeg) + mb.adeg, bd = unsigned(ma.bdeg) + mb.bdeg;
        if (ad > 255 || bd > 255) throw std::overflow_error("DiffPoly: parameter degree overflow");
        m.adeg = static_cast<std::uint8_t>(ad);
        m.bdeg = static_cast<std::uint8_t>(bd);
        m.factors = ma.factors;
        m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
        m.normalize();
        r.add_term(m, ca * cb);
      }
    return r;
  }
  DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
  bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }

  DiffPoly scaled(const Coeff& c) const {
    DiffPoly r;
    if (coeff_is_zero(c)) return r;
    for (const auto& [m, v] : terms_) {
      Coeff nv = v * c;
      if (!coeff_is_zero(nv)) r.terms_.emplace(m, std::move(nv));
    }
    return r;
  }
  /// Multiply by alpha^da * beta^db.
  DiffPoly small_scaled(int da, int db) const {
    DiffPoly r;
    for (const auto& [m, v] : terms_) {
      Monomial n = m;
      n.adeg = static_cast<std::uint8_t>(n.adeg + da);
      n.bdeg = static_cast<std::uint8_t>(n.bdeg + db);
      r.terms_.emplace(std::move(n), v);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << "  +  ";
      first = false;
      os << "(" << coeff_str(c) << ")*" << m.str();
    }
    return os.str();
  }

 private:
  void add_term(const Monomial& m, const Coeff& c) {
    if (coeff_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  TermMap terms_;
};

/// Exact Leibniz differentiation with respect to x or t.
template <class Coeff>
DiffPoly<Coeff> dp_differentiate(const DiffPoly<Coeff>& p, Var var) {
  DiffPoly<Coeff> out;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      Monomial n = m;
      auto& f = n.factors[i];
      if (var == Var::x) {
        if (f.xo == 255) throw std::overflow_error("dp_differentiate: order overflow");
        ++f.xo;
      } else {
        if (f.to == 255) throw std::overflow_error("dp_differentiate: order overflow");
        ++f.to;
      }
      n.normalize();
      out += DiffPoly<Coeff>::term(c, std::move(n));
    }
  }
  return out;
}

template <class Coeff>
DiffPoly<Coeff> dp_differentiate(const DiffPoly<Coeff>& p, Var var, int times) {
  DiffPoly<Coeff> out = p;
  for (int i = 0; i < times; ++i) out = dp_differentiate(out, var);
  return out;
}

/// Drop every monomial whose small-parameter degree reaches the ideal cap.
template <class Coeff>
DiffPoly<Coeff> dp_truncate(const DiffPoly<Coeff>& p, OrderIdeal ideal = {}) {
  DiffPoly<Coeff> out;
  for (const auto& [m, c] : p.terms())
    if (m.small_degree() < ideal.drop_at) out += DiffPoly<Coeff>::term(c, m);
  return out;
}

/// Rewrite rule applied by dp_substitute. Two modes:
///   - replace_symbol: every occurrence of `head` (at any derivative orders)
///     becomes the correspondingly differentiated `body`; the body must not
///     mention `head`.
///   - reduce_time: occurrences of `head` carrying at least one t-derivative,
///     d_x^m d_t^n head with n >= 1, become d_x^m d_t^(n-1) body; the body
///     must be free of t-derivatives so each pass strictly lowers the time
///     order. Pure-x occurrences are untouched.
template <class Coeff>
struct SubstitutionRule {
  enum class Mode { replace_symbol, reduce_time };
  Mode mode;
  FieldSym head;
  DiffPoly<Coeff> body;

  static SubstitutionRule replace(FieldSym head, DiffPoly<Coeff> body) {
    for (const auto& [m, c] : body.terms())
      if (m.contains(head)) throw std::invalid_argument("SubstitutionRule: recursive replacement body");
    return SubstitutionRule{Mode::replace_symbol, head, std::move(body)};
  }
  static SubstitutionRule reduce_time(FieldSym head, DiffPoly<Coeff> body) {
    for (const auto& [m, c] : body.terms())
      if (m.has_time_derivative())
        throw std::invalid_argument("SubstitutionRule: time-reduction body must be t-free");
    return SubstitutionRule{Mode::reduce_time, head, std::move(body)};
  }
};

template <class Coeff>
DiffPoly<Coeff> dp_substitute(const DiffPoly<Coeff>& p, const SubstitutionRule<Coeff>& rule,
                              OrderIdeal ideal = {}) {
  using Rule = SubstitutionRule<Coeff>;
  DiffPoly<Coeff> cur = dp_truncate(p, ideal);
  for (int guard = 0; guard < 64; ++guard) {
    DiffPoly<Coeff> next;
    bool hit = false;
    for (const auto& [m, c] : cur.terms()) {
      std::size_t target = m.factors.size();
      for (std::size_t i = 0; i < m.factors.size(); ++i) {
        const Factor& f = m.factors[i];
        if (f.sym != rule.head) continue;
        if (rule.mode == Rule::Mode::reduce_time && f.to == 0) continue;
        target = i;
        break;
      }
      if (target == m.factors.size()) {
        next += DiffPoly<Coeff>::term(c, m);
        continue;
      }
      hit = true;
      const Factor f = m.factors[target];
      Monomial rest = m;
      rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(target));
      DiffPoly<Coeff> piece = rule.body;
      if (rule.mode == Rule::Mode::reduce_time) {
        piece = dp_differentiate(piece, Var::t, f.to - 1);
      } else {
        piece = dp_differentiate(piece, Var::t, f.to);
      }
      piece = dp_differentiate(piece, Var::x, f.xo);
      next += DiffPoly<Coeff>::term(c, rest) * piece;
    }
    cur = dp_truncate(next, ideal);
    if (!hit) return cur;
  }
  throw std::logic_error("dp_substitute: fixpoint not reached");
}

}  // namespace gsobe::sym
