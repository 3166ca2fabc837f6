#pragma once

#include <array>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "qhc/connection.hpp"
#include "qhc/linalg.hpp"

namespace qhc {

/// Residuals of the Killing system in the order (k=x,11), (k=y,11), (k=x,12),
/// (k=y,12), (k=x,22), (k=y,22).
struct KillingResiduals {
  std::array<PuiseuxPoly, 6> r;

  bool all_zero() const {
    for (const auto& p : r)
      if (!p.is_zero()) return false;
    return true;
  }
  friend KillingResiduals operator+(const KillingResiduals& u, const KillingResiduals& v) {
    KillingResiduals out;
    for (size_t i = 0; i < 6; ++i) out.r[i] = u.r[i] + v.r[i];
    return out;
  }
  friend bool operator==(const KillingResiduals& u, const KillingResiduals& v) { return u.r == v.r; }
};

inline KillingResiduals killing_residuals(const Connection& conn, const VectorField2& v) {
  const auto& A = conn.symbol(0);
  const auto& B = conn.symbol(1);
  const auto& C = conn.symbol(2);
  const auto& D = conn.symbol(3);
  const auto& E = conn.symbol(4);
  const auto& F = conn.symbol(5);
  const auto& a = v.cx;
  const auto& b = v.cy;
  auto dx = [](const PuiseuxPoly& p) { return p.derive(Var::x); };
  auto dy = [](const PuiseuxPoly& p) { return p.derive(Var::y); };
  const PuiseuxPoly ax = dx(a), ay = dy(a), bx = dx(b), by = dy(b);
  const Rational two(2);

  KillingResiduals k;
  k.r[0] = dx(ax) + A * ax - B * ay + two * C * bx + dx(A) * a + dy(A) * b;
  k.r[1] = dx(bx) + two * B * ax + (two * D - A) * bx - B * by + dx(B) * a + dy(B) * b;
  k.r[2] = dy(ax) + (A - D) * ay + E * bx + C * by + dx(C) * a + dy(C) * b;
  k.r[3] = dy(bx) + D * ax + B * ay + (F - C) * bx + dx(D) * a + dy(D) * b;
  k.r[4] = dy(ay) - E * ax + (two * C - F) * ay + two * E * by + dx(E) * a + dy(E) * b;
  k.r[5] = dy(by) + two * D * ay - E * bx + F * by + dx(F) * a + dy(F) * b;
  return k;
}

inline bool is_killing(const Connection& conn, const VectorField2& v) {
  return killing_residuals(conn, v).all_zero();
}

namespace detail {

using CoeffKey = std::tuple<int, Rational, unsigned>;

inline std::map<CoeffKey, Rational> coefficients(const VectorField2& v) {
  std::map<CoeffKey, Rational> out;
  for (int comp = 0; comp < 2; ++comp)
    for (const auto& [k, c] : v[comp].terms()) out[{comp, k.first, k.second}] = c;
  return out;
}

}  // namespace detail

/// c[i][j] holds the coordinates of [fields[i], fields[j]] in the basis `fields`.
using StructureConstants = std::vector<std::vector<std::vector<Rational>>>;

/// Expresses every bracket in the span of `fields`; NotClosed when one leaves it.
inline StructureConstants structure_constants(const std::vector<VectorField2>& fields) {
  const size_t n = fields.size();
  std::vector<std::map<detail::CoeffKey, Rational>> coeffs;
  std::map<detail::CoeffKey, size_t> row_of;
  for (const auto& f : fields) {
    coeffs.push_back(detail::coefficients(f));
    for (const auto& [k, c] : coeffs.back()) row_of.try_emplace(k, 0);
  }
  std::vector<std::vector<std::map<detail::CoeffKey, Rational>>> brackets(n, std::vector<std::map<detail::CoeffKey, Rational>>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      brackets[i][j] = detail::coefficients(vf_bracket(fields[i], fields[j]));
      for (const auto& [k, c] : brackets[i][j]) row_of.try_emplace(k, 0);
    }
  size_t idx = 0;
  for (auto& [k, r] : row_of) r = idx++;

  linalg::Mat<Rational> basis(row_of.size(), std::vector<Rational>(n, Rational(0)));
  for (size_t col = 0; col < n; ++col)
    for (const auto& [k, c] : coeffs[col]) basis[row_of[k]][col] = c;
  if (linalg::rank(basis) < n) throw DependentFields("generator list is linearly dependent");

  StructureConstants out(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      std::vector<Rational> rhs(row_of.size(), Rational(0));
      for (const auto& [k, c] : brackets[i][j]) rhs[row_of[k]] = c;
      auto sol = linalg::solve(basis, rhs);
      if (!sol)
        throw NotClosed("[" + std::to_string(i) + "," + std::to_string(j) + "] leaves the span");
      out[i][j] = *sol;
      for (size_t k = 0; k < n; ++k) out[j][i][k] = -(*sol)[k];
    }
  return out;
}

/// Rank of the evaluated fields at an exact point.
inline size_t rank_at(const std::vector<VectorField2>& fields, const Rational& x0, const Rational& y0) {
  linalg::Mat<Rational> m(2, std::vector<Rational>(fields.size()));
  for (size_t j = 0; j < fields.size(); ++j) {
    m[0][j] = fields[j].cx.eval(x0, y0);
    m[1][j] = fields[j].cy.eval(x0, y0);
  }
  return fields.empty() ? 0 : linalg::rank(m);
}

struct JetReport {
  Rational x0, y0;
  std::vector<std::pair<unsigned, unsigned>> dims;  // (order, dimension)
  bool stabilized = false;
  unsigned final_dim = 6;
  bool exact = true;
};

namespace detail {

using PolyMat = std::array<std::array<PuiseuxPoly, 6>, 6>;
using PolyRows = std::vector<std::array<PuiseuxPoly, 6>>;

inline PolyMat mat_mul(const PolyMat& a, const PolyMat& b) {
  PolyMat out;
  for (size_t i = 0; i < 6; ++i)
    for (size_t k = 0; k < 6; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < 6; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline PolyRows rows_mul(const PolyRows& a, const PolyMat& b) {
  PolyRows out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < 6; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < 6; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

/// d/dv (C J) = (dC/dv + C M_v) J.
inline PolyRows derive_constraint(const PolyRows& c, const PolyMat& m, Var v) {
  PolyRows out = rows_mul(c, m);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < 6; ++j) out[i][j] += c[i][j].derive(v);
  return out;
}

}  // namespace detail

/// Kernel dimension, order by order, of the prolonged Killing system at a point.
/// Unknowns are the 1-jet (a, b, a_x, a_y, b_x, b_y). Order k stacks the
/// mixed-partial constraints of the solved second-order system and their
/// derivatives up to order k - 2.
inline JetReport jet_killing_dimension(const Connection& conn, const Rational& x0, const Rational& y0,
                                       unsigned max_order) {
  if (max_order < 2) throw std::invalid_argument("jet_killing_dimension: max_order must be at least 2");
  enum { a, b, ax, ay, bx, by };
  const auto& A = conn.symbol(0);
  const auto& B = conn.symbol(1);
  const auto& C = conn.symbol(2);
  const auto& D = conn.symbol(3);
  const auto& E = conn.symbol(4);
  const auto& F = conn.symbol(5);
  auto dx = [](const PuiseuxPoly& p) { return p.derive(Var::x); };
  auto dy = [](const PuiseuxPoly& p) { return p.derive(Var::y); };
  const Rational two(2);
  using Row = std::array<PuiseuxPoly, 6>;
  auto row = [](std::initializer_list<std::pair<int, PuiseuxPoly>> entries) {
    Row r;
    for (const auto& [i, p] : entries) r[i] -= p;  // second derivative = -(lower order part)
    return r;
  };
  const Row axx = row({{ax, A}, {ay, -B}, {bx, two * C}, {a, dx(A)}, {b, dy(A)}});
  const Row bxx = row({{ax, two * B}, {bx, two * D - A}, {by, -B}, {a, dx(B)}, {b, dy(B)}});
  const Row axy = row({{ay, A - D}, {bx, E}, {by, C}, {a, dx(C)}, {b, dy(C)}});
  const Row bxy = row({{ax, D}, {ay, B}, {bx, F - C}, {a, dx(D)}, {b, dy(D)}});
  const Row ayy = row({{ax, -E}, {ay, two * C - F}, {by, two * E}, {a, dx(E)}, {b, dy(E)}});
  const Row byy = row({{ay, two * D}, {bx, -E}, {by, F}, {a, dx(F)}, {b, dy(F)}});

  detail::PolyMat mx, my;
  mx[a][ax] = 1;
  mx[b][bx] = 1;
  mx[ax] = axx;
  mx[ay] = axy;
  mx[bx] = bxx;
  mx[by] = bxy;
  my[a][ay] = 1;
  my[b][by] = 1;
  my[ax] = axy;
  my[ay] = ayy;
  my[bx] = bxy;
  my[by] = byy;

  const detail::PolyMat mxy = detail::mat_mul(mx, my), myx = detail::mat_mul(my, mx);
  detail::PolyRows c0(6);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) c0[i][j] = dy(mx[i][j]) - dx(my[i][j]) + mxy[i][j] - myx[i][j];

  // levels[t][i] = d^i/dx^i d^(t-i)/dy^(t-i) C0
  std::vector<std::vector<detail::PolyRows>> levels;
  std::vector<detail::PolyRows> by_order;  // constraints introduced at each order >= 2
  for (unsigned order = 2; order <= max_order; ++order) {
    const unsigned t = order - 2;
    std::vector<detail::PolyRows> level(t + 1);
    if (t == 0) {
      level[0] = c0;
    } else {
      const auto& prev = levels.back();
      for (unsigned i = 0; i <= t; ++i)
        level[i] = i > 0 ? detail::derive_constraint(prev[i - 1], mx, Var::x)
                         : detail::derive_constraint(prev[0], my, Var::y);
    }
    detail::PolyRows all;
    for (const auto& rows : level) all.insert(all.end(), rows.begin(), rows.end());
    by_order.push_back(std::move(all));
    levels.push_back(std::move(level));
  }

  JetReport report;
  report.x0 = x0;
  report.y0 = y0;
  try {
    linalg::Mat<Rational> stacked;
    for (size_t o = 0; o < by_order.size(); ++o) {
      for (const auto& r : by_order[o]) {
        std::vector<Rational> vals(6);
        for (size_t j = 0; j < 6; ++j) vals[j] = r[j].eval(x0, y0);
        stacked.push_back(std::move(vals));
      }
      report.dims.emplace_back(static_cast<unsigned>(o + 2), static_cast<unsigned>(6 - linalg::rank(stacked)));
    }
  } catch (const ExactnessError&) {
    report.exact = false;
    report.dims.clear();
    const double xf = x0.to_double(), yf = y0.to_double();
    linalg::Mat<double> stacked;
    for (size_t o = 0; o < by_order.size(); ++o) {
      for (const auto& r : by_order[o]) {
        std::vector<double> vals(6);
        for (size_t j = 0; j < 6; ++j) vals[j] = r[j].eval(xf, yf);
        stacked.push_back(std::move(vals));
      }
      report.dims.emplace_back(static_cast<unsigned>(o + 2), static_cast<unsigned>(6 - linalg::rank(stacked)));
    }
  }
  const size_t m = report.dims.size();
  report.final_dim = report.dims.back().second;
  report.stabilized = m >= 2 && report.dims[m - 1].second == report.dims[m - 2].second;
  return report;
}

}  // namespace qhc
