#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhc/connection.hpp"

namespace qhc {

enum class Family { I, II0, II1, III, flat, example };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::II0: return "II0";
    case Family::II1: return "II1";
    case Family::III: return "III";
    case Family::flat: return "flat";
    case Family::example: return "example";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  if (s == "I") return Family::I;
  if (s == "II0") return Family::II0;
  if (s == "II1") return Family::II1;
  if (s == "III") return Family::III;
  if (s == "flat") return Family::flat;
  if (s == "example") return Family::example;
  throw std::invalid_argument("unknown family '" + s + "'");
}

inline bool has_n(Family f) { return f == Family::I || f == Family::II0 || f == Family::II1; }
inline bool is_type_two(Family f) { return f == Family::II0 || f == Family::II1; }

struct ParamClass {
  Family family = Family::flat;
  Rational n;  // I, II0, II1 only
  Rational gamma, phi, epsilon;  // phi unused for III

  static ParamClass type_I(Rational n, Rational g, Rational p, Rational e) {
    return {Family::I, std::move(n), std::move(g), std::move(p), std::move(e)};
  }
  static ParamClass type_II0(Rational n, Rational g, Rational p, Rational e) {
    return {Family::II0, std::move(n), std::move(g), std::move(p), std::move(e)};
  }
  static ParamClass type_II1(Rational n, Rational g, Rational p, Rational e) {
    return {Family::II1, std::move(n), std::move(g), std::move(p), std::move(e)};
  }
  static ParamClass type_III(Rational g, Rational e) { return {Family::III, Rational(0), std::move(g), Rational(0), std::move(e)}; }
  static ParamClass flat() { return {}; }
  static ParamClass example() {
    return {Family::example, Rational(2), Rational(3, 4), Rational(-3, 4), Rational(-3, 4)};
  }

  std::pair<Rational, Rational> basepoint() const {
    return family == Family::II1 ? std::pair{Rational(0), Rational(1)} : std::pair{Rational(0), Rational(0)};
  }

  friend bool operator==(const ParamClass& a, const ParamClass& b) {
    return a.family == b.family && a.n == b.n && a.gamma == b.gamma && a.phi == b.phi && a.epsilon == b.epsilon;
  }

  std::string str() const {
    switch (family) {
      case Family::flat: return "flat";
      case Family::example: return "example";
      case Family::III: return "III(gamma=" + gamma.str() + ", epsilon=" + epsilon.str() + ")";
      default:
        return to_string(family) + "(n=" + n.str() + ", gamma=" + gamma.str() + ", phi=" + phi.str() +
               ", epsilon=" + epsilon.str() + ")";
    }
  }
};

/// Type I(1, gamma, -gamma, -gamma^2): locally homogeneous with a third Killing field.
inline bool is_exceptional_homogeneous(const ParamClass& p) {
  return p.family == Family::I && p.n == Rational(1) && !p.gamma.is_zero() && p.phi == -p.gamma &&
         p.epsilon == -p.gamma * p.gamma;
}

/// Type II with n = 2 and phi = 2 gamma, which coincides with Type III.
inline bool is_type_two_sl2_branch(const ParamClass& p) {
  return is_type_two(p.family) && p.n == Rational(2) && p.phi == Rational(2) * p.gamma;
}

/// Throws InvalidParams naming the first violated constraint.
inline void validate(const ParamClass& p) {
  if (p.family == Family::flat || p.family == Family::example) return;
  if (p.family == Family::III) {
    if (p.gamma.is_zero() && p.epsilon.is_zero()) throw InvalidParams("(gamma, epsilon) must not both vanish");
    if (!p.phi.is_zero()) throw InvalidParams("Type III has no phi parameter");
    return;
  }
  const Rational twice = Rational(2) * p.n;
  if (!twice.is_integer()) throw InvalidParams("n must be a half-integer, got " + p.n.str());
  if (p.family == Family::I && p.n < Rational(1, 2)) throw InvalidParams("Type I needs n >= 1/2");
  if (is_type_two(p.family) && p.n < Rational(5, 2) && !is_type_two_sl2_branch(p))
    throw InvalidParams("Type II needs n >= 5/2");
  if (!p.n.is_integer() && !(p.gamma.is_zero() && p.phi.is_zero()))
    throw InvalidParams("gamma and phi must vanish when n is not an integer");
  if (p.gamma.is_zero() && p.phi.is_zero() && p.epsilon.is_zero())
    throw InvalidParams("(gamma, phi, epsilon) must not all vanish");
}

inline std::vector<std::string> warnings(const ParamClass& p) {
  std::vector<std::string> out;
  if (is_exceptional_homogeneous(p)) out.emplace_back("locally homogeneous: extra Killing field");
  if (is_type_two_sl2_branch(p)) out.emplace_back("Type II with n=2 and phi=2*gamma coincides with Type III");
  return out;
}

inline Connection make_normal_form(const ParamClass& p) {
  validate(p);
  using P = PuiseuxPoly;
  const Rational &g = p.gamma, &f = p.phi, &e = p.epsilon;
  Connection::Symbols s;
  switch (p.family) {
    case Family::flat:
      return Connection::flat();
    case Family::example:
    case Family::I: {
      const Rational& n = p.n;
      s[2] = P::monomial(-g, n);
      s[4] = P::monomial(-e / n, Rational(2) * n + Rational(1));
      s[5] = P::monomial(-f, n);
      break;
    }
    case Family::II0:
    case Family::II1: {
      const Rational& n = p.n;
      const Rational en = e / n, two(2);
      s[0] = P::monomial(-en, two * n - 3, 2) + P::monomial(two * g, n - 2, 1);
      s[1] = P::monomial(-en, two * n - 4, 3) + P::monomial(two * g - f, n - 3, 2);
      s[2] = P::monomial(en, two * n - 2, 1) + P::monomial(-g, n - 1, 0);
      s[3] = P::monomial(en, two * n - 3, 2) + P::monomial(f - g, n - 2, 1);
      s[4] = P::monomial(-en, two * n - 1, 0);
      s[5] = P::monomial(-en, two * n - 2, 1) + P::monomial(-f, n - 1, 0);
      break;
    }
    case Family::III: {
      const Rational h = e / Rational(2), two(2);
      s[0] = P::monomial(-h, 1, 2) + P::monomial(two * g, 0, 1);
      s[1] = P::monomial(-h, 0, 3);
      s[2] = P::monomial(h, 2, 1) + P::monomial(-g, 1, 0);
      s[3] = P::monomial(h, 1, 2) + P::monomial(g, 0, 1);
      s[4] = P::monomial(-h, 3, 0);
      s[5] = P::monomial(-h, 2, 1) + P::monomial(-two * g, 1, 0);
      break;
    }
  }
  return Connection(std::move(s), p.str());
}

/// The connection with a Killing field A whose flow is an isometry of a torus quotient.
inline Connection make_example_torus() { return make_normal_form(ParamClass::example()); }

struct GeneratorSet {
  std::vector<VectorField2> killing;
  std::vector<VectorField2> centralizer;
};

inline GeneratorSet generators(const ParamClass& p) {
  validate(p);
  using P = PuiseuxPoly;
  auto field = [](P cx, P cy) { return VectorField2{std::move(cx), std::move(cy)}; };
  GeneratorSet out;
  auto type_three = [&] {
    out.killing = {field(P(), P::x()), field(P::y(), P()), field(P::x(), -P::y())};
    out.centralizer = {field(P::x(), P::y())};
  };
  switch (p.family) {
    case Family::flat:
      out.killing = {field(1, P()),       field(P(), 1),       field(P::x(), P()),
                     field(P::y(), P()), field(P(), P::x()), field(P(), P::y())};
      break;
    case Family::III:
      type_three();
      break;
    case Family::example:
    case Family::I: {
      const Rational inv = Rational(1) / p.n;
      out.killing = {field(inv * P::x(), -P::y()), field(P(), 1)};
      out.centralizer = {field(-inv * P::x(), P()), field(P(), P::monomial(-1, -p.n))};
      if (is_exceptional_homogeneous(p)) {
        out.killing.push_back(field(P::monomial(2, 1, 1) + P(Rational(2) / p.gamma), P::monomial(-1, 0, 2)));
        std::vector<VectorField2> kept;
        for (const auto& c : out.centralizer) {
          bool commutes = true;
          for (const auto& k : out.killing) commutes = commutes && vf_bracket(k, c).is_zero();
          if (commutes) kept.push_back(c);
        }
        out.centralizer = kept;
      }
      break;
    }
    case Family::II0:
    case Family::II1: {
      if (is_type_two_sl2_branch(p)) {
        type_three();
        break;
      }
      const Rational inv = Rational(1) / p.n;
      out.killing = {field(inv * P::x(), inv * (Rational(1) - p.n) * P::y()), field(P(), P::x())};
      out.centralizer = {field(-inv * P::x(), -inv * P::y()), field(P(), P::monomial(-1, Rational(1) - p.n))};
      break;
    }
  }
  return out;
}

inline ParamClass scale_params(const ParamClass& p, const Rational& mu) {
  if (mu.is_zero()) throw InvalidScale("mu must be nonzero");
  if (p.family == Family::II1 && mu.sign() < 0) throw InvalidScale("Type II1 only admits mu > 0");
  if (p.family == Family::flat || p.family == Family::example)
    throw FamilyMismatch("family " + to_string(p.family) + " has no parameters to scale");
  ParamClass q = p;
  q.gamma = mu * p.gamma;
  q.phi = mu * p.phi;
  q.epsilon = mu * mu * p.epsilon;
  return q;
}

namespace detail {

/// Largest t with t^2 dividing m, and the squarefree part m / t^2.
inline std::pair<BigInt, BigInt> square_split(BigInt m) {
  BigInt t = 1, s = 1;
  for (BigInt d = 2; d * d <= m; ++d) {
    while (m % (d * d) == 0) {
      m /= d * d;
      t *= d;
    }
    if (m % d == 0) {
      m /= d;
      s *= d;
    }
  }
  return {t, s * m};
}

}  // namespace detail

/// Some admissible mu with scale_params(p, mu) == q, if any.
inline std::optional<Rational> equivalence_scale(const ParamClass& p, const ParamClass& q) {
  if (p.family != q.family || p.n != q.n)
    throw FamilyMismatch(p.str() + " vs " + q.str());
  if (p.family == Family::flat || p.family == Family::example) return Rational(1);
  auto admissible = [&](const Rational& mu) {
    if (mu.is_zero() || (p.family == Family::II1 && mu.sign() < 0)) return false;
    return scale_params(p, mu) == q;
  };
  std::optional<Rational> mu;
  if (!p.gamma.is_zero()) mu = q.gamma / p.gamma;
  else if (!p.phi.is_zero()) mu = q.phi / p.phi;
  if (mu) return admissible(*mu) ? mu : std::nullopt;
  if (p.epsilon.is_zero()) return std::nullopt;
  const Rational ratio = q.epsilon / p.epsilon;
  if (ratio.sign() <= 0) return std::nullopt;
  auto root = rational_root(ratio, 2);
  if (!root || !admissible(*root)) return std::nullopt;
  return root;
}

inline bool equivalent_params(const ParamClass& p, const ParamClass& q) { return equivalence_scale(p, q).has_value(); }

/// Canonical representative of the scaling class and the mu that reaches it.
/// The first nonzero of (gamma, phi) becomes 1 (or +-1 for II1); otherwise
/// epsilon becomes +- a squarefree integer, the closest rational scaling gets to +-1.
inline std::pair<ParamClass, Rational> canonicalize(const ParamClass& p) {
  validate(p);
  if (p.family == Family::flat || p.family == Family::example) return {p, Rational(1)};
  const Rational& lead = !p.gamma.is_zero() ? p.gamma : p.phi;
  Rational mu;
  if (!lead.is_zero()) {
    mu = Rational(1) / (p.family == Family::II1 ? abs(lead) : lead);
  } else {
    const Rational e = abs(p.epsilon);
    const auto [t, s] = detail::square_split(e.numerator() * e.denominator());
    mu = Rational(e.denominator(), t);
  }
  return {scale_params(p, mu), mu};
}

/// Nonzero curvature whose every term carries a positive power of x.
inline bool curvature_locus_is_axis(const Connection& conn) {
  const CurvatureTensor r = curvature(conn);
  if (r.is_zero()) return false;
  for (const PuiseuxPoly* comp : r.components())
    for (const auto& [k, c] : comp->terms())
      if (k.first < Rational(1)) return false;
  return true;
}

}  // namespace qhc
