#pragma once

#include <random>
#include <vector>

#include "qhc/qhc.hpp"

namespace qhc::testing {

/// Deterministic generator of small random algebraic objects.
class Gen {
 public:
  explicit Gen(unsigned seed = 12345) : rng_(seed) {}

  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }

  Rational rational(long long range = 5, long long max_den = 4) {
    return Rational(integer(-range, range), integer(1, max_den));
  }
  Rational nonzero_rational(long long range = 5, long long max_den = 4) {
    Rational r;
    do r = rational(range, max_den);
    while (r.is_zero());
    return r;
  }

  /// Random polynomial; x-exponents are integers unless max_xden > 1.
  PuiseuxPoly poly(int terms = 3, long long max_xden = 1, long long xrange = 3, unsigned ymax = 2) {
    PuiseuxPoly p;
    for (int i = 0; i < terms; ++i)
      p.add_term(rational(), Rational(integer(-xrange, xrange), integer(1, max_xden)),
                 static_cast<unsigned>(integer(0, ymax)));
    return p;
  }
  VectorField2 field(int terms = 2, long long max_xden = 1) { return {poly(terms, max_xden), poly(terms, max_xden)}; }

  /// Random map with c > 0 (so every substitution stays exact when roots are perfect).
  MonoTriMap map(bool allow_negative_c = false) {
    Rational c = Rational(integer(1, 3));
    if (allow_negative_c && integer(0, 1)) c = -c;
    const Rational r = Rational(integer(1, 3)) * (integer(0, 1) ? 1 : -1);
    PuiseuxPoly g;
    g.add_term(rational(), Rational(integer(-2, 2)), 0);
    return {c, r, nonzero_rational(), Rational(integer(-2, 2)), g};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline PuiseuxPoly X(const Rational& e = 1) { return PuiseuxPoly::x(e); }
inline PuiseuxPoly Y(unsigned e = 1) { return PuiseuxPoly::y(e); }
inline PuiseuxPoly M(const Rational& c, const Rational& xe, unsigned ye = 0) { return PuiseuxPoly::monomial(c, xe, ye); }

/// Lie derivative of the connection along V, evaluated on coordinate fields:
/// (L_V nabla)(d_i, d_j) = [V, nabla_i d_j] - nabla_i [V, d_j] - nabla_[V, d_i] d_j.
inline VectorField2 lie_derivative_of_connection(const Connection& c, const VectorField2& v, int i, int j) {
  const VectorField2 d[2] = {fields::dx(), fields::dy()};
  const VectorField2 nij = covariant_derivative(c, d[i], d[j]);
  return vf_bracket(v, nij) - covariant_derivative(c, d[i], vf_bracket(v, d[j])) -
         covariant_derivative(c, vf_bracket(v, d[i]), d[j]);
}

}  // namespace qhc::testing
