#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhc/affine_model.hpp"
#include "qhc/catalog.hpp"

namespace qhc {

inline void require_chart_n(long long n) {
  if (n < 2) throw InvalidN("n must be an integer >= 2, got " + std::to_string(n));
}

/// sigma, rho, beta, example_sigma, psi1, psi2 (the psi maps take n).
inline MonoTriMap builtin_map(const std::string& name, long long n = 0) {
  const PuiseuxPoly zero;
  if (name == "sigma") return {-1, 1, 1, 0, zero};
  if (name == "rho") return {1, 1, -1, 0, zero};
  if (name == "beta") return {1, 1, -1, 0, PuiseuxPoly::x()};
  if (name == "example_sigma") return {-1, 1, -1, 0, PuiseuxPoly::monomial(-2, -2)};
  if (name == "psi1") {
    require_chart_n(n);
    return {1, Rational(-1, n), 1, Rational(-1, n), zero};
  }
  if (name == "psi2") {
    require_chart_n(n);
    return {1, Rational(-1, n), 1, 0, PuiseuxPoly(-1)};
  }
  throw std::invalid_argument("unknown map '" + name + "'");
}

/// Chart map from the (u, v) half plane to plane normal-form coordinates.
inline MonoTriMap chart_map(long long n) { return builtin_map(n % 2 ? "psi1" : "psi2", n); }

/// Pushes X0 = u d/du, Y0 = -u d/dv, A0 = -(u d/du + v d/dv) through the chart
/// map and compares with the table generators: (X, Y, A) for odd n (case 1),
/// (X, Y, A - B) for even n (case 2).
inline bool frame_pushforward_check(long long n, int which_case) {
  require_chart_n(n);
  if (which_case != 1 && which_case != 2) throw InvalidN("case must be 1 or 2");
  if ((which_case == 1) != (n % 2 == 1))
    throw InvalidN("case " + std::to_string(which_case) + " does not apply to n = " + std::to_string(n));
  using P = PuiseuxPoly;
  const VectorField2 x0{P::x(), P()}, y0{P(), -P::x()}, a0{-P::x(), -P::y()};
  const MonoTriMap psi = chart_map(n);
  const ParamClass p = which_case == 1 ? ParamClass::type_II1(n, 1, 0, 0) : ParamClass::type_I(n, 1, 0, 0);
  const GeneratorSet gens = generators(p);
  const VectorField2& X = gens.centralizer[0];
  const VectorField2& Y = gens.centralizer[1];
  const VectorField2 A = which_case == 1 ? gens.killing[0] : gens.killing[0] - gens.killing[1];
  return pushforward(psi, x0) == X && pushforward(psi, y0) == Y && pushforward(psi, a0) == A;
}

struct Chart {
  int index = 0;
  Connection conn;
  int orientation = 1;
  ParamClass params;
};

/// A transition from chart `from` to chart `to`. The word (F1, ..., Fk) stands
/// for F1 o ... o Fk, kept unexpanded because some composites leave the
/// monomial-triangular class over the reals; it is an isometry when pulling
/// conn(to) back by F1, then F2, ..., gives conn(from).
struct Transition {
  int from = 0, to = 0;
  std::vector<MonoTriMap> word;
  std::string label;
};

struct Atlas {
  long long n1 = 0, n2 = 0;
  int window = 0;
  LeftInvariantConnection model;  // the two-marking sextuple
  std::vector<Chart> charts;
  std::vector<Transition> transitions;

  const Chart& chart(int index) const {
    for (const auto& c : charts)
      if (c.index == index) return c;
    throw std::out_of_range("no chart " + std::to_string(index));
  }
};

inline MarkingKind boundary_marking(long long n) { return n % 2 ? MarkingKind::II0 : MarkingKind::I0; }

/// Plane normal form attached to a boundary marking with invariant n and sextuple L.
inline ParamClass boundary_params(long long n, const LeftInvariantConnection& L) {
  return n % 2 ? ParamClass::type_II1(n, L.gamma, L.phi, L.epsilon) : ParamClass::type_I(n, L.gamma, L.phi, L.epsilon);
}

/// Odd charts carry the n1 normal form, even charts the n2 one; chart i sits on the
/// boundary line between cells i-1 and i, and each cell is glued to its two neighbours.
inline Atlas build_model_atlas(long long n1, long long n2, int window) {
  require_chart_n(n1);
  require_chart_n(n2);
  if (window < 1) throw std::invalid_argument("window must be positive");
  Atlas atlas;
  atlas.n1 = n1;
  atlas.n2 = n2;
  atlas.window = window;
  atlas.model = solve_two_markings(boundary_marking(n1), Rational(n1), boundary_marking(n2), Rational(n2));
  const LeftInvariantConnection across = act_automorphism(atlas.model, -1, -1);
  const ParamClass plus = boundary_params(n1, atlas.model), minus = boundary_params(n2, across);
  const Connection plus_conn = make_normal_form(plus), minus_conn = make_normal_form(minus);

  for (int i = -window; i <= window; ++i) {
    const bool odd = (i % 2) != 0;
    atlas.charts.push_back({i, odd ? plus_conn : minus_conn, 1, odd ? plus : minus});
  }
  const MonoTriMap sigma = builtin_map("sigma");
  const MonoTriMap t = map_compose(chart_map(n2), map_compose(builtin_map("beta"), map_invert(chart_map(n1))));
  for (int i = -window; i <= window; ++i) atlas.transitions.push_back({i, i, {sigma}, "sigma"});
  for (int j = -window; j < window; ++j) {
    if (j % 2 == 0) atlas.transitions.push_back({j + 1, j, {t}, "T"});
    else atlas.transitions.push_back({j, j + 1, {sigma, t, sigma}, "sigma.T.sigma"});
  }
  return atlas;
}

struct TransitionCheck {
  int from, to;
  std::string label;
  bool isometry;
};

struct AtlasVerdict {
  bool ok = true;
  std::vector<TransitionCheck> checks;
  std::optional<size_t> first_failure;
};

inline bool transition_is_isometry(const Atlas& atlas, const Transition& tr) {
  Connection c = atlas.chart(tr.to).conn;
  for (const auto& f : tr.word) c = pullback_connection(c, f);
  return c == atlas.chart(tr.from).conn;
}

inline AtlasVerdict verify_atlas(const Atlas& atlas) {
  AtlasVerdict v;
  for (size_t i = 0; i < atlas.transitions.size(); ++i) {
    const auto& tr = atlas.transitions[i];
    bool iso = false;
    try {
      iso = transition_is_isometry(atlas, tr);
    } catch (const Error&) {
      iso = false;
    }
    v.checks.push_back({tr.from, tr.to, tr.label, iso});
    if (!iso && v.ok) {
      v.ok = false;
      v.first_failure = i;
    }
  }
  return v;
}

enum class Reflection { sigma, rho, sigma_rho };

/// Parameter factor mu by which a reflection acts on (gamma, phi, epsilon) for integer n,
/// nullopt where it does not apply (rho moves the II1 basepoint).
inline std::optional<int> reflection_factor(Family family, long long n, Reflection r) {
  const int even_sign = n % 2 == 0 ? 1 : -1;  // (-1)^n
  switch (family) {
    case Family::I:
      if (r == Reflection::sigma) return even_sign;
      if (r == Reflection::rho) return -1;
      return -even_sign;
    case Family::II0:
      if (r == Reflection::sigma) return -even_sign;
      if (r == Reflection::rho) return -1;
      return even_sign;
    case Family::II1:
      if (r == Reflection::sigma) return -even_sign;
      return std::nullopt;
    default:
      throw FamilyMismatch("reflections act on Types I and II only");
  }
}

inline MonoTriMap reflection_map(Reflection r) {
  if (r == Reflection::sigma) return builtin_map("sigma");
  if (r == Reflection::rho) return builtin_map("rho");
  return map_compose(builtin_map("sigma"), builtin_map("rho"));
}

struct QuotientData {
  long long k = 1;
  double tau = 1.0;
  double theta = 0.0;
};

/// (e^tau, e^((theta + k) tau)).
inline std::pair<double, double> continuation_factors(const QuotientData& q) {
  if (q.k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(q.tau > 0)) throw std::invalid_argument("tau must be positive");
  return {std::exp(q.tau), std::exp((q.theta + static_cast<double>(q.k)) * q.tau)};
}

}  // namespace qhc
