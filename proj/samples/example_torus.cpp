// Prints the example torus connection, its Killing data and a few identities.
#include <iostream>

#include "qhc/qhc.hpp"

int main() {
  using namespace qhc;
  const Connection conn = make_example_torus();
  std::cout << "connection " << conn.tag() << "\n";
  for (size_t i = 0; i < 6; ++i) std::cout << "  " << Connection::kNames[i] << " = " << conn.symbol(i) << "\n";

  const CurvatureTensor r = curvature(conn);
  std::cout << "curvature R(dx,dy)dx = (" << r.Rx_x << ", " << r.Rx_y << ")\n";
  std::cout << "curvature R(dx,dy)dy = (" << r.Ry_x << ", " << r.Ry_y << ")\n";

  const GeneratorSet gens = generators(ParamClass::example());
  for (const auto& k : gens.killing) std::cout << "Killing field " << k << "\n";

  for (const auto& [name, ok] : verify_example_torus()) std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";

  const JetReport jet = jet_killing_dimension(conn, 1, 0, 4);
  std::cout << "Killing algebra dimension near (1,0): " << jet.final_dim << "\n";

  const LeftInvariantConnection L{Rational(-1, 2), 0, Rational(3, 4), 1, Rational(-3, 4), Rational(-3, 4)};
  for (const auto& m : find_markings(L).markings)
    std::cout << "marking lambda=" << m.lambda << " type " << m.type.str() << "\n";
  return 0;
}
