#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qhc/rational.hpp"

namespace qhc {

/// coeff * x^xexp * y^yexp
struct Monomial {
  Rational coeff;
  Rational xexp;
  unsigned yexp = 0;
};

enum class Var { x, y };

/// Finite sum of monomials c x^(p/q) y^m, kept canonical: one term per
/// exponent pair, no zero coefficients, ordered by (xexp, yexp).
class PuiseuxPoly {
 public:
  using Key = std::pair<Rational, unsigned>;
  using TermMap = std::map<Key, Rational>;

  PuiseuxPoly() = default;
  PuiseuxPoly(const Rational& c) { add_term(c, Rational(0), 0); }  // NOLINT
  PuiseuxPoly(long long c) : PuiseuxPoly(Rational(c)) {}          // NOLINT
  PuiseuxPoly(const Monomial& m) { add_term(m.coeff, m.xexp, m.yexp); }  // NOLINT

  static PuiseuxPoly monomial(const Rational& c, const Rational& xexp, unsigned yexp = 0) {
    PuiseuxPoly p;
    p.add_term(c, xexp, yexp);
    return p;
  }
  static PuiseuxPoly x(const Rational& e = Rational(1)) { return monomial(1, e, 0); }
  static PuiseuxPoly y(unsigned e = 1) { return monomial(1, 0, e); }

  const TermMap& terms() const { return terms_; }
  std::vector<Monomial> monomials() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.push_back({c, k.first, k.second});
    return out;
  }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  /// Coefficient of x^xexp y^yexp (zero when absent).
  Rational coeff(const Rational& xexp, unsigned yexp) const {
    auto it = terms_.find({xexp, yexp});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{Rational(0), 0u});
  }
  bool depends_on_y() const {
    for (const auto& [k, c] : terms_)
      if (k.second != 0) return true;
    return false;
  }
  unsigned max_yexp() const {
    unsigned m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.second);
    return m;
  }
  /// True when every x-exponent is a nonnegative integer.
  bool is_polynomial() const {
    for (const auto& [k, c] : terms_)
      if (!k.first.is_integer() || k.first.sign() < 0) return false;
    return true;
  }

  /// Adds c x^xexp y^yexp in place.
  void add_term(const Rational& c, const Rational& xexp, unsigned yexp) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{xexp, yexp}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PuiseuxPoly operator-() const {
    PuiseuxPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  PuiseuxPoly& operator+=(const PuiseuxPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(c, k.first, k.second);
    return *this;
  }
  PuiseuxPoly& operator-=(const PuiseuxPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(-c, k.first, k.second);
    return *this;
  }
  PuiseuxPoly& operator*=(const PuiseuxPoly& o) { return *this = *this * o; }

  friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b; }
  friend PuiseuxPoly operator-(PuiseuxPoly a, const PuiseuxPoly& b) { return a -= b; }
  friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
    return r;
  }
  friend PuiseuxPoly operator*(const Rational& s, const PuiseuxPoly& p) {
    PuiseuxPoly r;
    if (s.is_zero()) return r;
    r = p;
    for (auto& [k, c] : r.terms_) c *= s;
    return r;
  }
  friend PuiseuxPoly operator*(const PuiseuxPoly& p, const Rational& s) { return s * p; }

  /// Division by a single nonzero monomial (y-exponent must not exceed any term's).
  PuiseuxPoly divide(const Monomial& m) const {
    if (m.coeff.is_zero()) throw std::domain_error("PuiseuxPoly: division by zero monomial");
    PuiseuxPoly r;
    for (const auto& [k, c] : terms_) {
      if (k.second < m.yexp) throw std::domain_error("PuiseuxPoly: y-exponent would become negative");
      r.add_term(c / m.coeff, k.first - m.xexp, k.second - m.yexp);
    }
    return r;
  }

  /// p^e for natural e.
  PuiseuxPoly pow(unsigned e) const {
    PuiseuxPoly r(1), base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return r;
  }

  PuiseuxPoly derive(Var v) const {
    PuiseuxPoly r;
    for (const auto& [k, c] : terms_) {
      if (v == Var::x) {
        r.add_term(c * k.first, k.first - Rational(1), k.second);
      } else if (k.second > 0) {
        r.add_term(c * Rational(static_cast<long long>(k.second)), k.first, k.second - 1);
      }
    }
    return r;
  }

  /// Exact value at a rational point.
  Rational eval(const Rational& x0, const Rational& y0) const {
    Rational sum(0);
    for (const auto& [k, c] : terms_)
      sum += c * x_power_exact(x0, k.first) * pow_int(y0, k.second);
    return sum;
  }

  /// Floating value; x0 <= 0 follows the same domain rules as exact evaluation.
  double eval(double x0, double y0) const {
    double sum = 0.0;
    for (const auto& [k, c] : terms_) {
      check_domain(x0 > 0, x0 == 0, k.first);
      sum += c.to_double() * std::pow(x0, k.first.to_double()) *
             std::pow(y0, static_cast<double>(k.second));
    }
    return sum;
  }

  friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PuiseuxPoly& a, const PuiseuxPoly& b) { return !(a == b); }

  /// Human-readable form, e.g. "-3/4*x^2 + 3/8*x^5*y".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      Rational mag = abs(c);
      out += first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ");
      first = false;
      std::string factors;
      if (!k.first.is_zero()) {
        factors += "x";
        if (k.first != Rational(1)) {
          const bool paren = !k.first.is_integer() || k.first.sign() < 0;
          factors += "^" + (paren ? "(" + k.first.str() + ")" : k.first.str());
        }
      }
      if (k.second > 0) {
        if (!factors.empty()) factors += "*";
        factors += "y";
        if (k.second > 1) factors += "^" + std::to_string(k.second);
      }
      if (factors.empty()) {
        out += mag.str();
      } else if (mag == Rational(1)) {
        out += factors;
      } else {
        out += mag.str() + "*" + factors;
      }
    }
    return out;
  }

  static void check_domain(bool positive, bool zero, const Rational& xexp) {
    if (positive) return;
    if (!xexp.is_integer())
      throw DomainError("x^(" + xexp.str() + ") needs x > 0");
    if (zero && xexp.sign() < 0) throw DomainError("x^(" + xexp.str() + ") has a pole at x = 0");
  }

  static Rational x_power_exact(const Rational& x0, const Rational& e) {
    check_domain(x0.sign() > 0, x0.is_zero(), e);
    return rational_power(x0, e);
  }

 private:
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const PuiseuxPoly& p) { return os << p.str(); }

/// cx d/dx + cy d/dy
struct VectorField2 {
  PuiseuxPoly cx;
  PuiseuxPoly cy;

  const PuiseuxPoly& operator[](int k) const { return k == 0 ? cx : cy; }
  PuiseuxPoly& operator[](int k) { return k == 0 ? cx : cy; }

  bool is_zero() const { return cx.is_zero() && cy.is_zero(); }

  /// Directional derivative V(p).
  PuiseuxPoly apply(const PuiseuxPoly& p) const {
    return cx * p.derive(Var::x) + cy * p.derive(Var::y);
  }

  VectorField2 operator-() const { return {-cx, -cy}; }
  friend VectorField2 operator+(const VectorField2& a, const VectorField2& b) { return {a.cx + b.cx, a.cy + b.cy}; }
  friend VectorField2 operator-(const VectorField2& a, const VectorField2& b) { return {a.cx - b.cx, a.cy - b.cy}; }
  friend VectorField2 operator*(const PuiseuxPoly& f, const VectorField2& v) { return {f * v.cx, f * v.cy}; }
  friend VectorField2 operator*(const Rational& s, const VectorField2& v) { return {s * v.cx, s * v.cy}; }
  friend bool operator==(const VectorField2& a, const VectorField2& b) { return a.cx == b.cx && a.cy == b.cy; }
  friend bool operator!=(const VectorField2& a, const VectorField2& b) { return !(a == b); }

  std::string str() const { return "(" + cx.str() + ") d/dx + (" + cy.str() + ") d/dy"; }
};

inline std::ostream& operator<<(std::ostream& os, const VectorField2& v) { return os << v.str(); }

/// Lie bracket [V, W].
inline VectorField2 vf_bracket(const VectorField2& v, const VectorField2& w) {
  return {v.apply(w.cx) - w.apply(v.cx), v.apply(w.cy) - w.apply(v.cy)};
}

namespace fields {
inline VectorField2 dx() { return {PuiseuxPoly(1), PuiseuxPoly()}; }
inline VectorField2 dy() { return {PuiseuxPoly(), PuiseuxPoly(1)}; }
inline VectorField2 make(PuiseuxPoly cx, PuiseuxPoly cy) { return {std::move(cx), std::move(cy)}; }
}  // namespace fields

}  // namespace qhc
