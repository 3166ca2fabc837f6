#pragma once

#include <array>
#include <string>

#include "qhc/mono_tri_map.hpp"

namespace qhc {

enum class Domain { whole_plane, right_half_plane };

inline std::string to_string(Domain d) { return d == Domain::whole_plane ? "whole-plane" : "right-half-plane"; }

/// Torsion-free connection on a plane region. Symbols are stored once per
/// symmetric pair: G[2*p + k] = Gamma^k_{ij} with p = 0 for (1,1), 1 for (1,2), 2 for (2,2).
class Connection {
 public:
  using Symbols = std::array<PuiseuxPoly, 6>;
  static constexpr std::array<const char*, 6> kNames = {"G111", "G112", "G121", "G122", "G221", "G222"};

  Connection() = default;

  /// Domain derived from the terms: whole plane iff every exponent is a natural number.
  explicit Connection(Symbols g, std::string tag = {}) : g_(std::move(g)), tag_(std::move(tag)) {
    domain_ = all_polynomial() ? Domain::whole_plane : Domain::right_half_plane;
  }
  Connection(Symbols g, Domain d, std::string tag = {}) : g_(std::move(g)), domain_(d), tag_(std::move(tag)) {
    if (d == Domain::whole_plane && !all_polynomial())
      throw std::invalid_argument("Connection: whole-plane domain needs natural x-exponents");
  }

  static Connection flat() { return Connection(Symbols{}, "flat"); }

  static size_t index(int i, int j, int k) {
    const int p = i + j;  // (0,0)->0, (0,1)/(1,0)->1, (1,1)->2
    return static_cast<size_t>(2 * p + k);
  }
  /// Gamma^k_{ij}, indices 0 = x, 1 = y.
  const PuiseuxPoly& gamma(int i, int j, int k) const { return g_[index(i, j, k)]; }

  const Symbols& symbols() const { return g_; }
  const PuiseuxPoly& symbol(size_t idx) const { return g_.at(idx); }
  Domain domain() const { return domain_; }
  const std::string& tag() const { return tag_; }
  void set_tag(std::string t) { tag_ = std::move(t); }

  bool is_flat() const {
    for (const auto& s : g_)
      if (!s.is_zero()) return false;
    return true;
  }

  /// Exact equality of the Christoffel symbols.
  friend bool operator==(const Connection& a, const Connection& b) { return a.g_ == b.g_; }
  friend bool operator!=(const Connection& a, const Connection& b) { return !(a == b); }

 private:
  bool all_polynomial() const {
    for (const auto& s : g_)
      if (!s.is_polynomial()) return false;
    return true;
  }

  Symbols g_;
  Domain domain_ = Domain::whole_plane;
  std::string tag_;
};

/// Components of R(d/dx, d/dy) d/dx = Rx_x d/dx + Rx_y d/dy and likewise for d/dy.
struct CurvatureTensor {
  PuiseuxPoly Rx_x, Rx_y, Ry_x, Ry_y;

  bool is_zero() const { return Rx_x.is_zero() && Rx_y.is_zero() && Ry_x.is_zero() && Ry_y.is_zero(); }
  std::array<const PuiseuxPoly*, 4> components() const { return {&Rx_x, &Rx_y, &Ry_x, &Ry_y}; }
  friend bool operator==(const CurvatureTensor& a, const CurvatureTensor& b) {
    return a.Rx_x == b.Rx_x && a.Rx_y == b.Rx_y && a.Ry_x == b.Ry_x && a.Ry_y == b.Ry_y;
  }
};

inline VectorField2 covariant_derivative(const Connection& conn, const VectorField2& v, const VectorField2& w) {
  VectorField2 out;
  for (int k = 0; k < 2; ++k) {
    PuiseuxPoly acc = v.apply(w[k]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const PuiseuxPoly& gk = conn.gamma(i, j, k);
        if (gk.is_zero() || v[i].is_zero() || w[j].is_zero()) continue;
        acc += v[i] * w[j] * gk;
      }
    out[k] = std::move(acc);
  }
  return out;
}

/// Symmetric storage makes the torsion vanish identically.
inline bool torsion_check(const Connection&) { return true; }

inline CurvatureTensor curvature(const Connection& conn) {
  auto comp = [&](int j, int k) {
    PuiseuxPoly r = conn.gamma(1, j, k).derive(Var::x) - conn.gamma(0, j, k).derive(Var::y);
    for (int l = 0; l < 2; ++l) {
      r += conn.gamma(1, j, l) * conn.gamma(0, l, k);
      r -= conn.gamma(0, j, l) * conn.gamma(1, l, k);
    }
    return r;
  };
  return {comp(0, 0), comp(0, 1), comp(1, 0), comp(1, 1)};
}

/// F^* conn, in the source coordinates of F.
inline Connection pullback_connection(const Connection& conn, const MonoTriMap& f) {
  const Matrix2 j = map_jacobian(f);
  const Matrix2 jinv = map_jacobian_inverse(f);
  std::array<PuiseuxPoly, 2> comps{f.component1(), f.component2()};
  std::array<PuiseuxPoly, 6> composed;
  for (size_t idx = 0; idx < 6; ++idx) composed[idx] = pp_substitute(conn.symbol(idx), f);
  auto gamma_f = [&](int l, int m, int n) -> const PuiseuxPoly& { return composed[Connection::index(l, m, n)]; };
  const Var vars[2] = {Var::x, Var::y};

  Connection::Symbols out;
  for (int i = 0; i < 2; ++i)
    for (int jj = i; jj < 2; ++jj) {
      std::array<PuiseuxPoly, 2> inner;  // indexed by n
      for (int n = 0; n < 2; ++n) {
        PuiseuxPoly acc = comps[n].derive(vars[i]).derive(vars[jj]);
        for (int l = 0; l < 2; ++l)
          for (int m = 0; m < 2; ++m) {
            if (j[l][i].is_zero() || j[m][jj].is_zero() || gamma_f(l, m, n).is_zero()) continue;
            acc += j[l][i] * j[m][jj] * gamma_f(l, m, n);
          }
        inner[n] = std::move(acc);
      }
      for (int k = 0; k < 2; ++k)
        out[Connection::index(i, jj, k)] = jinv[k][0] * inner[0] + jinv[k][1] * inner[1];
    }
  return Connection(std::move(out), conn.tag());
}

inline bool is_isometry(const Connection& conn, const MonoTriMap& f) {
  return pullback_connection(conn, f) == conn;
}

}  // namespace qhc
