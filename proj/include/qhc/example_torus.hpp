#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qhc/gluing.hpp"
#include "qhc/killing.hpp"

namespace qhc {

/// Frame of the example: A = (1/2)x d/dx - y d/dy, Z = (1/2)x d/dx + x^-2 d/dy, h = x^2 y.
struct ExampleFrame {
  VectorField2 A, Z;
  PuiseuxPoly h;
};

inline ExampleFrame example_frame() {
  using P = PuiseuxPoly;
  const Rational half(1, 2);
  return {{half * P::x(), -P::y()}, {half * P::x(), P::x(-2)}, P::monomial(1, 2, 1)};
}

/// Named identities of the example connection, each checked exactly.
inline std::vector<std::pair<std::string, bool>> verify_example_torus() {
  const Connection conn = make_example_torus();
  const auto [A, Z, h] = example_frame();
  const Rational q3(3, 4), q1(1, 4), half(1, 2);
  const PuiseuxPoly k = h * h + Rational(2) * h;
  const MonoTriMap sigma = builtin_map("example_sigma");
  std::vector<std::pair<std::string, bool>> out;
  out.emplace_back("nabla_A Z = (3/4)A - Z", covariant_derivative(conn, A, Z) == q3 * A - Z);
  out.emplace_back("nabla_Z Z = -(1/4)Z", covariant_derivative(conn, Z, Z) == -q1 * Z);
  out.emplace_back("nabla_A A = (1/2)A + (3/4)(h^2+2h)Z", covariant_derivative(conn, A, A) == half * A + (q3 * k) * Z);
  out.emplace_back("A is Killing", is_killing(conn, A));
  out.emplace_back("d/dy is Killing", is_killing(conn, fields::dy()));
  out.emplace_back("sigma preserves the connection", is_isometry(conn, sigma));
  out.emplace_back("sigma is an involution", map_compose(sigma, sigma).is_identity());
  out.emplace_back("h o sigma = -2 - h", pp_substitute(h, sigma) == PuiseuxPoly(-2) - h);
  out.emplace_back("curvature is nonzero and vanishes on x=0", curvature_locus_is_axis(conn));
  return out;
}

}  // namespace qhc
