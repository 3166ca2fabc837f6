#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhc/connection.hpp"

namespace qhc {

/// Left-invariant torsion-free connection on the affine group, written in the
/// frame X0 = u d/du, Y0 = -u d/dv:
///   nabla_X0 X0 = alpha X0 + beta Y0, nabla_X0 Y0 = gamma X0 + delta Y0,
///   nabla_Y0 Y0 = epsilon X0 + phi Y0.
struct LeftInvariantConnection {
  Rational alpha, beta, gamma, delta, epsilon, phi;

  friend bool operator==(const LeftInvariantConnection& a, const LeftInvariantConnection& b) {
    return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.delta == b.delta &&
           a.epsilon == b.epsilon && a.phi == b.phi;
  }
  friend bool operator!=(const LeftInvariantConnection& a, const LeftInvariantConnection& b) { return !(a == b); }

  std::string str() const {
    return "(" + alpha.str() + ", " + beta.str() + ", " + gamma.str() + ", " + delta.str() + ", " +
           epsilon.str() + ", " + phi.str() + ")";
  }
};

/// Coefficients after replacing (X0, Y0) by (X0 + lambda Y0, mu Y0).
inline LeftInvariantConnection act_automorphism(const LeftInvariantConnection& L, const Rational& lambda,
                                                const Rational& mu) {
  if (mu.is_zero()) throw InvalidScale("mu must be nonzero");
  const Rational& l = lambda;
  const Rational l2 = l * l, l3 = l2 * l, two(2);
  LeftInvariantConnection out;
  out.alpha = L.alpha + two * l * L.gamma + L.epsilon * l2;
  out.beta = (L.beta + (two * L.delta - L.alpha - Rational(1)) * l + (L.phi - two * L.gamma) * l2 - L.epsilon * l3) / mu;
  out.gamma = mu * (L.gamma + l * L.epsilon);
  out.delta = L.delta + (L.phi - L.gamma) * l - L.epsilon * l2;
  out.epsilon = mu * mu * L.epsilon;
  out.phi = mu * (L.phi - l * L.epsilon);
  return out;
}

/// (lambda1, mu1) followed by (lambda2, mu2) as a single automorphism.
inline std::pair<Rational, Rational> compose_automorphisms(const Rational& l1, const Rational& m1, const Rational& l2,
                                                           const Rational& m2) {
  return {l1 + m1 * l2, m1 * m2};
}

/// Christoffel symbols of the left-invariant connection in the (u, v) chart, u > 0.
inline Connection to_plane_connection(const LeftInvariantConnection& L) {
  using P = PuiseuxPoly;
  // frame fields in coordinates and coordinate fields in the frame
  const VectorField2 e[2] = {{P::x(), P()}, {P(), -P::x()}};
  const P coord[2][2] = {{P::x(-1), P()}, {P(), -P::x(-1)}};  // d/du = (1/u) X0, d/dv = -(1/u) Y0
  const Rational one(1);
  // nabla_{e_a} e_b in the frame
  const Rational conn[2][2][2] = {{{L.alpha, L.beta}, {L.gamma, L.delta}},
                                  {{L.gamma, L.delta - one}, {L.epsilon, L.phi}}};
  Connection::Symbols s;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      VectorField2 acc;
      for (int b = 0; b < 2; ++b) {
        P coeff = coord[j][b].derive(i == 0 ? Var::x : Var::y);
        for (int a = 0; a < 2; ++a)
          for (int c = 0; c < 2; ++c)
            coeff += conn[a][c][b] * coord[i][a] * coord[j][c];
        acc = acc + coeff * e[b];
      }
      for (int k = 0; k < 2; ++k) s[Connection::index(i, j, k)] = acc[k];
    }
  return Connection(std::move(s), "left-invariant" + L.str());
}

enum class MarkingKind { I0, II0, neither };

struct MarkingType {
  MarkingKind kind = MarkingKind::neither;
  Rational n;
  bool special = false;

  std::string str() const {
    switch (kind) {
      case MarkingKind::I0: return "I0(" + n.str() + ")";
      case MarkingKind::II0: return "II0(" + n.str() + ")";
      case MarkingKind::neither: return "neither";
    }
    return "?";
  }
  friend bool operator==(const MarkingType& a, const MarkingType& b) {
    return a.kind == b.kind && (a.kind == MarkingKind::neither || a.n == b.n);
  }
};

inline bool is_special_n(const Rational& n) { return (Rational(2) * n).is_integer() && n >= Rational(1); }

inline MarkingType classify_marking(const Rational& alpha_m, const Rational& delta_m) {
  MarkingType t;
  if (alpha_m.is_zero()) return t;
  const Rational n = Rational(-1) / alpha_m;
  if (delta_m == Rational(1)) t.kind = MarkingKind::I0;
  else if (delta_m == Rational(1) + alpha_m) t.kind = MarkingKind::II0;
  else return t;
  t.n = n;
  t.special = is_special_n(n);
  return t;
}

/// (alpha(nabla, Z), delta(nabla, Z)) for Z = X0 + lambda Y0.
inline std::pair<Rational, Rational> marking_invariants(const LeftInvariantConnection& L, const Rational& lambda) {
  const Rational l2 = lambda * lambda;
  return {L.alpha + Rational(2) * lambda * L.gamma + L.epsilon * l2,
          L.delta + (L.phi - L.gamma) * lambda - L.epsilon * l2};
}

/// Coefficients (c0, c1, c2, c3) of the cubic whose roots are the markings X0 + lambda Y0.
inline std::array<Rational, 4> marking_cubic(const LeftInvariantConnection& L) {
  return {L.beta, Rational(2) * L.delta - L.alpha - Rational(1), L.phi - Rational(2) * L.gamma, -L.epsilon};
}

struct Marking {
  bool exact = true;
  Rational lambda;  // valid when exact
  double lambda_approx = 0.0;
  Rational alpha_m, delta_m;  // valid when exact
  double alpha_approx = 0.0, delta_approx = 0.0;
  MarkingType type;
};

struct MarkingReport {
  std::vector<Marking> markings;  // exact roots first, ascending; then inexact ones ascending

  std::vector<Rational> exact_lambdas() const {
    std::vector<Rational> out;
    for (const auto& m : markings)
      if (m.exact) out.push_back(m.lambda);
    return out;
  }
};

namespace detail {

inline BigInt eval_int(const std::vector<BigInt>& b, const BigInt& s) {
  BigInt acc = 0;
  for (size_t i = b.size(); i-- > 0;) acc = acc * s + b[i];
  return acc;
}

inline int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/// Integer roots of a monic integer polynomial of degree at most 3 (b[i] multiplies s^i).
inline std::vector<BigInt> monic_integer_roots(const std::vector<BigInt>& b) {
  const size_t deg = b.size() - 1;
  BigInt bound = 0;
  for (size_t i = 0; i < deg; ++i) bound = std::max(bound, BigInt(abs(b[i])));
  bound += 1;
  // points around the critical points split the range into monotone pieces
  std::vector<BigInt> cuts = {-bound, bound};
  auto near = [&](const BigInt& c) {
    for (int k = -2; k <= 2; ++k)
      if (c + k > -bound && c + k < bound) cuts.push_back(c + k);
  };
  if (deg == 2) near(-b[1] / 2);
  if (deg == 3) {
    const BigInt disc = 4 * b[2] * b[2] - 12 * b[1];
    if (disc >= 0) {
      const BigInt r = boost::multiprecision::sqrt(disc);
      near((-2 * b[2] - r) / 6);
      near((-2 * b[2] + r) / 6);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<BigInt> roots;
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (eval_int(b, cuts[i]) == 0) roots.push_back(cuts[i]);
    if (i + 1 == cuts.size()) break;
    BigInt lo = cuts[i], hi = cuts[i + 1];
    const int slo = sign_of(eval_int(b, lo)), shi = sign_of(eval_int(b, hi));
    if (slo == 0 || shi == 0 || slo == shi) continue;
    while (hi - lo > 1) {
      const BigInt mid = lo + (hi - lo) / 2;
      const int sm = sign_of(eval_int(b, mid));
      if (sm == 0) {
        roots.push_back(mid);
        break;
      }
      (sm == slo ? lo : hi) = mid;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// coeffs[i] multiplies t^i.
inline Rational horner(const std::vector<Rational>& coeffs, const Rational& t) {
  Rational acc(0);
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
  return acc;
}

/// Synthetic division by (t - root).
inline std::vector<Rational> deflate(const std::vector<Rational>& coeffs, const Rational& root) {
  const size_t deg = coeffs.size() - 1;
  std::vector<Rational> out(deg);
  Rational carry(0);
  for (size_t i = deg; i-- > 0;) {
    carry = coeffs[i + 1] + carry * root;
    out[i] = carry;
  }
  return out;
}

inline std::vector<double> real_roots_float(const std::vector<Rational>& coeffs) {
  std::vector<double> c;
  for (const auto& r : coeffs) c.push_back(r.to_double());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::vector<double> out;
  if (c.size() == 2) {
    out.push_back(-c[0] / c[1]);
  } else if (c.size() == 3) {
    const double disc = c[1] * c[1] - 4 * c[2] * c[0];
    if (disc < 0) return out;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (c[1] + (c[1] >= 0 ? sq : -sq));
    out.push_back(q / c[2]);
    if (q != 0.0) out.push_back(c[0] / q);
  } else if (c.size() == 4) {
    // depressed cubic t = s - b/3
    const double a = c[2] / c[3], b = c[1] / c[3], d = c[0] / c[3];
    const double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + d;
    const double disc = q * q / 4 + p * p * p / 27;
    if (disc > 0) {
      const double sq = std::sqrt(disc);
      out.push_back(std::cbrt(-q / 2 + sq) + std::cbrt(-q / 2 - sq) - a / 3);
    } else {
      const double r = std::sqrt(-p / 3);
      const double theta = r == 0 ? 0.0 : std::acos(std::clamp(-q / (2 * r * r * r), -1.0, 1.0));
      for (int k = 0; k < 3; ++k) out.push_back(2 * r * std::cos((theta - 2 * M_PI * k) / 3) - a / 3);
    }
    // one Newton polish step per root
    for (double& t : out) {
      const double f = ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
      const double df = (3 * c[3] * t + 2 * c[2]) * t + c[1];
      if (df != 0.0) t -= f / df;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(u)); }), out.end());
  return out;
}

inline MarkingType classify_marking_approx(double alpha_m, double delta_m) {
  MarkingType t;
  const double tol = 1e-12;
  if (std::abs(alpha_m) <= tol) return t;
  const double n = -1.0 / alpha_m;
  const double twice = std::round(2 * n);
  if (std::abs(2 * n - twice) > 1e-9) return t;
  const Rational nr(static_cast<long long>(twice), 2);
  if (std::abs(delta_m - 1.0) <= 1e-9) t.kind = MarkingKind::I0;
  else if (std::abs(delta_m - 1.0 - alpha_m) <= 1e-9) t.kind = MarkingKind::II0;
  else return t;
  t.n = nr;
  t.special = is_special_n(nr);
  return t;
}

}  // namespace detail

inline MarkingReport find_markings(const LeftInvariantConnection& L) {
  const auto cubic = marking_cubic(L);
  std::vector<Rational> coeffs(cubic.begin(), cubic.end());
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.empty()) throw DegenerateCubic("marking cubic vanishes identically: every direction X0 + lambda Y0 is a marking");

  std::vector<Rational> roots;
  std::vector<Rational> rest = coeffs;
  while (rest.size() > 1 && rest[0].is_zero()) {
    if (roots.empty() || roots.back() != Rational(0)) roots.emplace_back(0);
    rest.erase(rest.begin());
  }
  if (rest.size() > 1) {
    BigInt lcm = 1;
    for (const auto& c : rest) lcm = boost::multiprecision::lcm(lcm, c.denominator());
    std::vector<BigInt> ints;
    for (const auto& c : rest) ints.push_back((c * Rational(lcm, 1)).numerator());
    // t = s / a_d turns rational roots into integer roots of a monic polynomial
    const size_t deg = ints.size() - 1;
    const BigInt lead = ints.back();
    std::vector<BigInt> monic(deg + 1);
    BigInt scale = 1;
    for (size_t i = deg; i-- > 0;) {
      monic[i] = ints[i] * scale;
      scale *= lead;
    }
    monic[deg] = 1;
    for (const auto& s : detail::monic_integer_roots(monic)) {
      const Rational t(s, lead);
      roots.push_back(t);
      while (rest.size() > 1 && detail::horner(rest, t).is_zero()) rest = detail::deflate(rest, t);
    }
  }
  std::sort(roots.begin(), roots.end());

  MarkingReport report;
  for (const auto& t : roots) {
    Marking m;
    m.lambda = t;
    m.lambda_approx = t.to_double();
    std::tie(m.alpha_m, m.delta_m) = marking_invariants(L, t);
    m.alpha_approx = m.alpha_m.to_double();
    m.delta_approx = m.delta_m.to_double();
    m.type = classify_marking(m.alpha_m, m.delta_m);
    report.markings.push_back(std::move(m));
  }
  if (rest.size() > 1) {
    const double a = L.alpha.to_double(), g = L.gamma.to_double(), d = L.delta.to_double(),
                 e = L.epsilon.to_double(), f = L.phi.to_double();
    for (double t : detail::real_roots_float(rest)) {
      Marking m;
      m.exact = false;
      m.lambda_approx = t;
      m.alpha_approx = a + 2 * t * g + e * t * t;
      m.delta_approx = d + (f - g) * t - e * t * t;
      m.type = detail::classify_marking_approx(m.alpha_approx, m.delta_approx);
      report.markings.push_back(std::move(m));
    }
  }
  return report;
}

/// (alpha, delta) prescribed by a marking type.
inline std::pair<Rational, Rational> marking_slots(MarkingKind kind, const Rational& n) {
  if (kind == MarkingKind::neither) throw std::invalid_argument("marking type must be I0 or II0");
  if (n.is_zero()) throw InvalidN("n must be nonzero");
  const Rational alpha = Rational(-1) / n;
  return {alpha, kind == MarkingKind::I0 ? Rational(1) : Rational(1) + alpha};
}

/// The beta = 0 connection whose markings X0 and X0 - Y0 have the requested types.
inline LeftInvariantConnection solve_two_markings(MarkingKind t0, const Rational& n0, MarkingKind t1,
                                                  const Rational& n1) {
  const auto [a, d] = marking_slots(t0, n0);
  const auto [ap, dp] = marking_slots(t1, n1);
  const Rational one(1), two(2);
  // lambda = -1 in (lambda gamma, lambda^2 epsilon, lambda phi) = (d + d' - 1 - a, a + a' - 2d - 2d' + 2, 1 - 2d + a')
  LeftInvariantConnection L;
  L.alpha = a;
  L.beta = 0;
  L.delta = d;
  L.gamma = -(d + dp - one - a);
  L.epsilon = a + ap - two * d - two * dp + two;
  L.phi = -(one - two * d + ap);

  const auto cubic = marking_cubic(L);
  const Rational at_minus_one = cubic[0] - cubic[1] + cubic[2] - cubic[3];
  const auto [am, dm] = marking_invariants(L, Rational(-1));
  if (!at_minus_one.is_zero() || am != ap || dm != dp)
    throw Inconsistent("second marking does not reproduce the requested invariants");
  MarkingType want0{t0, n0}, want1{t1, n1};
  if (!(classify_marking(a, d) == want0) || !(classify_marking(am, dm) == want1))
    throw Inconsistent("requested types are not separable by (alpha, delta)");
  if (L.gamma.is_zero() && L.phi.is_zero()) throw Inconsistent("gamma and phi vanish simultaneously");
  return L;
}

/// (alpha'', delta'') of the third marking from the invariants of two others.
inline std::pair<Rational, Rational> third_marking_invariants(const Rational& a, const Rational& ap, const Rational& d,
                                                              const Rational& dp) {
  const Rational one(1), two(2), four(4);
  const Rational den = two - two * d - two * dp + a + ap;
  if (den.is_zero()) throw DegenerateDenominator("2 - 2 delta - 2 delta' + alpha + alpha' = 0");
  const Rational a2 = (a * ap - one - four * d * dp + two * d + two * dp) / den;
  const Rational d2 = (one - d * ap - a * dp + a * ap + a + ap - d - dp) / den;
  return {a2, d2};
}

}  // namespace qhc
