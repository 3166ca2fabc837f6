#pragma once

#include <array>
#include <string>

#include "qhc/puiseux.hpp"

namespace qhc {

class MonoTriMap;
PuiseuxPoly pp_substitute(const PuiseuxPoly& p, const MonoTriMap& f);

using Matrix2 = std::array<std::array<PuiseuxPoly, 2>, 2>;

/// F(x, y) = (c x^r, x^s (a y + g(x))).
class MonoTriMap {
 public:
  MonoTriMap() : c_(1), r_(1), a_(1), s_(0) {}
  MonoTriMap(Rational c, Rational r, Rational a, Rational s, PuiseuxPoly g)
      : c_(std::move(c)), r_(std::move(r)), a_(std::move(a)), s_(std::move(s)), g_(std::move(g)) {
    if (c_.is_zero() || r_.is_zero() || a_.is_zero())
      throw std::invalid_argument("MonoTriMap: c, r and a must be nonzero");
    if (g_.depends_on_y()) throw std::invalid_argument("MonoTriMap: g must depend on x only");
  }

  static MonoTriMap identity() { return {}; }

  /// Recovers the map from explicit components, if they have the required shape.
  static MonoTriMap from_components(const PuiseuxPoly& f1, const PuiseuxPoly& f2) {
    if (f1.size() != 1 || f1.depends_on_y())
      throw std::invalid_argument("MonoTriMap: first component is not a monomial in x: " + f1.str());
    const auto m1 = f1.monomials().front();
    if (f2.max_yexp() != 1)
      throw std::invalid_argument("MonoTriMap: second component is not affine in y: " + f2.str());
    PuiseuxPoly ypart, rest;
    for (const auto& m : f2.monomials()) {
      if (m.yexp == 1) ypart.add_term(m.coeff, m.xexp, 0);
      else rest.add_term(m.coeff, m.xexp, 0);
    }
    if (ypart.size() != 1)
      throw std::invalid_argument("MonoTriMap: y-coefficient is not a monomial: " + f2.str());
    const auto my = ypart.monomials().front();
    PuiseuxPoly g = rest.divide({Rational(1), my.xexp, 0});
    return {m1.coeff, m1.xexp, my.coeff, my.xexp, g};
  }

  const Rational& c() const { return c_; }
  const Rational& r() const { return r_; }
  const Rational& a() const { return a_; }
  const Rational& s() const { return s_; }
  const PuiseuxPoly& g() const { return g_; }

  PuiseuxPoly component1() const { return PuiseuxPoly::monomial(c_, r_, 0); }
  PuiseuxPoly component2() const {
    return PuiseuxPoly::monomial(a_, s_, 1) + g_ * PuiseuxPoly::x(s_);
  }

  bool is_identity() const { return *this == identity(); }

  friend bool operator==(const MonoTriMap& f, const MonoTriMap& h) {
    return f.c_ == h.c_ && f.r_ == h.r_ && f.a_ == h.a_ && f.s_ == h.s_ && f.g_ == h.g_;
  }
  friend bool operator!=(const MonoTriMap& f, const MonoTriMap& h) { return !(f == h); }

  std::string str() const { return "(" + component1().str() + ", " + component2().str() + ")"; }

 private:
  Rational c_, r_, a_, s_;
  PuiseuxPoly g_;
};

inline std::ostream& operator<<(std::ostream& os, const MonoTriMap& f) { return os << f.str(); }

/// p o F, exact.
inline PuiseuxPoly pp_substitute(const PuiseuxPoly& p, const MonoTriMap& f) {
  PuiseuxPoly result;
  if (p.is_zero()) return result;
  const PuiseuxPoly f2 = f.component2();
  std::vector<PuiseuxPoly> f2_powers{PuiseuxPoly(1)};
  for (const auto& [key, coeff] : p.terms()) {
    const auto& [xe, ye] = key;
    while (f2_powers.size() <= ye) f2_powers.push_back(f2_powers.back() * f2);
    Rational scale = coeff * rational_power(f.c(), xe);
    result += PuiseuxPoly::monomial(scale, f.r() * xe, 0) * f2_powers[ye];
  }
  return result;
}

/// F o G.
inline MonoTriMap map_compose(const MonoTriMap& f, const MonoTriMap& g) {
  return MonoTriMap::from_components(pp_substitute(f.component1(), g), pp_substitute(f.component2(), g));
}

inline MonoTriMap map_invert(const MonoTriMap& f) {
  const Rational rinv = Rational(1) / f.r();
  const Rational cinv = rational_power(f.c(), -rinv);
  const MonoTriMap first_inverse(cinv, rinv, 1, 0, PuiseuxPoly());
  const Rational a = rational_power(cinv, -f.s()) / f.a();
  const Rational s = -f.s() * rinv;
  PuiseuxPoly g = (Rational(-1) / f.a()) * PuiseuxPoly::x(f.s() * rinv) * pp_substitute(f.g(), first_inverse);
  return {cinv, rinv, a, s, g};
}

/// Rows are components, columns are d/dx, d/dy.
inline Matrix2 map_jacobian(const MonoTriMap& f) {
  const PuiseuxPoly f1 = f.component1(), f2 = f.component2();
  return {{{f1.derive(Var::x), f1.derive(Var::y)}, {f2.derive(Var::x), f2.derive(Var::y)}}};
}

/// Inverse of the (lower triangular) Jacobian matrix.
inline Matrix2 map_jacobian_inverse(const MonoTriMap& f) {
  const Matrix2 j = map_jacobian(f);
  const Monomial j11{f.c() * f.r(), f.r() - Rational(1), 0};
  const Monomial j22{f.a(), f.s(), 0};
  const Monomial det{j11.coeff * j22.coeff, j11.xexp + j22.xexp, 0};
  Matrix2 inv;
  inv[0][0] = PuiseuxPoly(1).divide(j11);
  inv[0][1] = PuiseuxPoly();
  inv[1][0] = (-j[1][0]).divide(det);
  inv[1][1] = PuiseuxPoly(1).divide(j22);
  return inv;
}

/// F_* V = (J V) o F^{-1}.
inline VectorField2 pushforward(const MonoTriMap& f, const VectorField2& v) {
  const Matrix2 j = map_jacobian(f);
  const MonoTriMap finv = map_invert(f);
  VectorField2 out;
  for (int k = 0; k < 2; ++k) out[k] = pp_substitute(j[k][0] * v.cx + j[k][1] * v.cy, finv);
  return out;
}

/// F^* W = J^{-1} (W o F).
inline VectorField2 pullback_field(const MonoTriMap& f, const VectorField2& w) {
  const Matrix2 jinv = map_jacobian_inverse(f);
  const PuiseuxPoly wx = pp_substitute(w.cx, f), wy = pp_substitute(w.cy, f);
  return {jinv[0][0] * wx + jinv[0][1] * wy, jinv[1][0] * wx + jinv[1][1] * wy};
}

}  // namespace qhc
