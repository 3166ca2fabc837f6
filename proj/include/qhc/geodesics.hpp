#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qhc/catalog.hpp"

namespace qhc {

struct GeodesicSample {
  double s, x, y, vx, vy;
  double u() const { return x * vy - y * vx; }
};

enum class TraceStatus { completed, blowup, left_domain };

inline std::string to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::completed: return "completed";
    case TraceStatus::blowup: return "blowup";
    case TraceStatus::left_domain: return "left-domain";
  }
  return "?";
}

struct GeodesicTrace {
  std::vector<GeodesicSample> samples;
  TraceStatus status = TraceStatus::completed;
  double end_s = 0.0;  // parameter where integration stopped
};

struct IntegrateOptions {
  /// When positive, steps are clamped so that samples land exactly on multiples
  /// of output_step and only those are recorded; otherwise every accepted step is.
  double output_step = 0.0;
  double blowup_norm = 1e12;
  size_t max_steps = 5'000'000;
};

namespace detail {

/// Christoffel symbols compiled for fast floating-point evaluation.
class CompiledSymbols {
 public:
  explicit CompiledSymbols(const Connection& conn) {
    for (size_t i = 0; i < 6; ++i)
      for (const auto& m : conn.symbol(i).monomials()) {
        Term t;
        t.c = m.coeff.to_double();
        t.integral = m.xexp.is_integer();
        t.xi = t.integral ? static_cast<int>(m.xexp.to_int64()) : 0;
        t.xe = m.xexp.to_double();
        t.ye = static_cast<int>(m.yexp);
        terms_[i].push_back(t);
        if (!t.integral) needs_positive_x_ = true;
      }
  }

  bool needs_positive_x() const { return needs_positive_x_; }

  /// false when a term cannot be evaluated at (x, y)
  bool eval(double x, double y, std::array<double, 6>& out) const {
    for (size_t i = 0; i < 6; ++i) {
      double acc = 0.0;
      for (const auto& t : terms_[i]) {
        double xp;
        if (t.integral) {
          if (x == 0.0 && t.xi < 0) return false;
          xp = ipow(x, t.xi);
        } else {
          if (x <= 0.0) return false;
          xp = std::pow(x, t.xe);
        }
        acc += t.c * xp * ipow(y, t.ye);
      }
      out[i] = acc;
    }
    return true;
  }

 private:
  struct Term {
    double c, xe;
    int xi, ye;
    bool integral;
  };
  static double ipow(double b, int e) {
    if (e < 0) return 1.0 / ipow(b, -e);
    double r = 1.0;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  std::array<std::vector<Term>, 6> terms_;
  bool needs_positive_x_ = false;
};

using State = std::array<double, 4>;

inline bool geodesic_rhs(const CompiledSymbols& g, const State& z, State& dz) {
  std::array<double, 6> G;
  if (!g.eval(z[0], z[1], G)) return false;
  const double vx = z[2], vy = z[3];
  dz[0] = vx;
  dz[1] = vy;
  dz[2] = -(G[0] * vx * vx + 2 * G[2] * vx * vy + G[4] * vy * vy);
  dz[3] = -(G[1] * vx * vx + 2 * G[3] * vx * vy + G[5] * vy * vy);
  return std::isfinite(dz[2]) && std::isfinite(dz[3]);
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of x''^k + Gamma^k_ij x'^i x'^j = 0.
inline GeodesicTrace integrate_geodesic(const Connection& conn, std::array<double, 2> p0, std::array<double, 2> v0,
                                        double s_max, double tol, const IntegrateOptions& opts = {}) {
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (!(s_max > 0)) throw std::invalid_argument("s_max must be positive");
  const detail::CompiledSymbols g(conn);
  const bool half_plane = conn.domain() == Domain::right_half_plane || g.needs_positive_x();
  if (half_plane && !(p0[0] > 0)) throw DomainError("start point must satisfy x > 0");
  detail::State z{p0[0], p0[1], v0[0], v0[1]}, k[7];
  if (!detail::geodesic_rhs(g, z, k[0])) throw DomainError("symbols cannot be evaluated at the start point");

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2, (void)c3, (void)c4, (void)c5;

  GeodesicTrace trace;
  trace.samples.push_back({0.0, z[0], z[1], z[2], z[3]});
  double s = 0.0;
  double h = std::min(s_max, opts.output_step > 0 ? opts.output_step : s_max) * 1e-2;
  const double h_min = 1e-14 * std::max(1.0, std::abs(s_max));
  long long next_grid = 1;
  bool left = false;

  for (size_t step = 0; step < opts.max_steps && s < s_max; ++step) {
    double target = s_max;
    if (opts.output_step > 0) target = std::min(s_max, static_cast<double>(next_grid) * opts.output_step);
    bool clamped = false;
    double hh = h;
    if (s + hh >= target) {
      hh = target - s;
      clamped = true;
    }

    bool boundary_hit = false;
    auto stage = [&](detail::State& out, std::initializer_list<std::pair<int, double>> coeffs, detail::State& dz) {
      out = z;
      for (const auto& [i, a] : coeffs)
        for (int j = 0; j < 4; ++j) out[j] += hh * a * k[i][j];
      if (half_plane && out[0] <= 0) {
        boundary_hit = true;
        return false;
      }
      return detail::geodesic_rhs(g, out, dz);
    };
    detail::State t;
    bool ok = stage(t, {{0, a21}}, k[1]) && stage(t, {{0, a31}, {1, a32}}, k[2]) &&
              stage(t, {{0, a41}, {1, a42}, {2, a43}}, k[3]) &&
              stage(t, {{0, a51}, {1, a52}, {2, a53}, {3, a54}}, k[4]) &&
              stage(t, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}}, k[5]);
    detail::State znew;
    double err = 0.0;
    if (ok) {
      for (int j = 0; j < 4; ++j)
        znew[j] = z[j] + hh * (b1 * k[0][j] + b3 * k[2][j] + b4 * k[3][j] + b5 * k[4][j] + b6 * k[5][j]);
      boundary_hit = half_plane && znew[0] <= 0;
      ok = !boundary_hit && detail::geodesic_rhs(g, znew, k[6]);
    }
    if (ok) {
      for (int j = 0; j < 4; ++j) {
        const double e = hh * (e1 * k[0][j] + e3 * k[2][j] + e4 * k[3][j] + e5 * k[4][j] + e6 * k[5][j] + e7 * k[6][j]);
        const double scale = tol * (1.0 + std::max(std::abs(z[j]), std::abs(znew[j])));
        err = std::max(err, std::abs(e) / scale);
      }
      if (!std::isfinite(err)) ok = false;
    }
    if (!ok) {
      h = hh * 0.25;
      if (h < h_min) {
        left = boundary_hit;
        break;
      }
      continue;
    }
    if (err <= 1.0) {
      s = clamped ? target : s + hh;
      z = znew;
      k[0] = k[6];
      if (!opts.output_step || clamped) {
        if (clamped && opts.output_step > 0) ++next_grid;
        trace.samples.push_back({s, z[0], z[1], z[2], z[3]});
      }
      const double norm = std::max({std::abs(z[0]), std::abs(z[1]), std::abs(z[2]), std::abs(z[3])});
      if (norm > opts.blowup_norm) {
        trace.status = TraceStatus::blowup;
        trace.end_s = s;
        return trace;
      }
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    const double hnew = (err <= 1.0 && clamped) ? std::max(h, hh * factor) : hh * factor;
    h = hnew;
    if (h < h_min) break;
  }
  trace.end_s = s;
  if (s >= s_max) trace.status = TraceStatus::completed;
  else trace.status = left ? TraceStatus::left_domain : TraceStatus::blowup;
  return trace;
}

struct ConicInvariantCheck {
  Rational gamma;
  double u0 = 0.0;
  double max_abs_dev = 0.0;       // |u(s) - u0 / (1 - 2 gamma u0 s)|
  double max_residual = 0.0;      // |u(s) (1 - 2 gamma u0 s) - u0|
  std::optional<double> blowup_predicted;
  double checked_up_to = 0.0;
};

/// (gamma, epsilon) of a Type III connection given by its symbols.
inline std::pair<Rational, Rational> type_three_params(const Connection& conn) {
  const Rational gamma = conn.symbol(0).coeff(0, 1) / Rational(2);
  const Rational epsilon = Rational(-2) * conn.symbol(0).coeff(1, 2);
  const ParamClass p = ParamClass::type_III(gamma, epsilon);
  if (gamma.is_zero() && epsilon.is_zero()) throw FamilyMismatch("connection is not of Type III");
  if (make_normal_form(p) != conn) throw FamilyMismatch("connection is not of Type III");
  return {gamma, epsilon};
}

/// Compares u = x vy - y vx along the trace with u0 / (1 - 2 gamma u0 s); when a
/// blow-up is predicted only samples with s <= fraction * s* are compared.
inline ConicInvariantCheck conic_invariant_check(const Connection& conn, const GeodesicTrace& trace,
                                                 double fraction = 0.8) {
  const auto [gamma, epsilon] = type_three_params(conn);
  (void)epsilon;
  if (trace.samples.empty()) throw std::invalid_argument("empty trace");
  ConicInvariantCheck out;
  out.gamma = gamma;
  out.u0 = trace.samples.front().u();
  const double scale = std::max({1.0, std::abs(trace.samples.front().x * trace.samples.front().vy),
                                 std::abs(trace.samples.front().y * trace.samples.front().vx)});
  if (std::abs(out.u0) <= 1e-14 * scale) throw NotTransverse("initial data lies on a line through the origin");
  const double gu = gamma.to_double() * out.u0;
  double limit = trace.samples.back().s;
  if (gu > 0) {
    out.blowup_predicted = 1.0 / (2.0 * gu);
    limit = std::min(limit, fraction * *out.blowup_predicted);
  }
  out.checked_up_to = limit;
  for (const auto& smp : trace.samples) {
    if (smp.s > limit) break;
    const double d = 1.0 - 2.0 * gu * smp.s;
    out.max_abs_dev = std::max(out.max_abs_dev, std::abs(smp.u() - out.u0 / d));
    out.max_residual = std::max(out.max_residual, std::abs(smp.u() * d - out.u0));
  }
  return out;
}

/// k with nabla_{d/dx} d/dx = k y^2 (x d/dx + y d/dy) for Type III with gamma = 0.
inline Rational sl2_form_constant(const Rational& gamma, const Rational& epsilon) {
  if (!gamma.is_zero()) throw NotComplete("gamma = " + gamma.str() + " != 0");
  const Rational k = -epsilon / Rational(2);
  const Connection c = make_normal_form(ParamClass::type_III(gamma, epsilon));
  if (c.symbol(0) != PuiseuxPoly::monomial(k, 1, 2) || c.symbol(1) != PuiseuxPoly::monomial(k, 0, 3))
    throw Inconsistent("Type III symbols do not match k y^2 (x, y)");
  return k;
}

/// Median special affine curvature of the traced curve (x(s), y(s)), from the
/// longest uniformly spaced prefix of the samples.
inline double affine_curvature_estimate(const GeodesicTrace& trace) {
  const auto& all = trace.samples;
  if (all.size() < 7) throw std::invalid_argument("affine curvature needs at least 7 samples");
  const double h = all[1].s - all[0].s;
  size_t uniform = 2;
  while (uniform < all.size() &&
         std::abs((all[uniform].s - all[uniform - 1].s) - h) <= 1e-9 * std::max(1.0, std::abs(h)))
    ++uniform;
  if (uniform < 7) throw std::invalid_argument("affine curvature needs at least 7 uniformly spaced samples");
  const std::vector<GeodesicSample> S(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(uniform));
  using V = std::array<double, 2>;
  auto det = [](const V& a, const V& b) { return a[0] * b[1] - a[1] * b[0]; };
  std::vector<double> kappas;
  for (size_t i = 2; i + 2 < S.size(); ++i) {
    V d1, d2, d3, d4;
    for (int c = 0; c < 2; ++c) {
      auto f = [&](int off) { return c == 0 ? S[i + off].vx : S[i + off].vy; };
      d1[c] = f(0);
      d2[c] = (f(-2) - 8 * f(-1) + 8 * f(1) - f(2)) / (12 * h);
      d3[c] = (-f(-2) + 16 * f(-1) - 30 * f(0) + 16 * f(1) - f(2)) / (12 * h * h);
      d4[c] = (-f(-2) + 2 * f(-1) - 2 * f(1) + f(2)) / (2 * h * h * h);
    }
    double D = det(d1, d2);
    if (std::abs(D) < 1e-10) throw DegenerateCurve("det(v', v'') vanishes at s = " + std::to_string(S[i].s));
    if (D < 0) {  // traverse backwards so that the arc length increases
      for (int c = 0; c < 2; ++c) {
        d1[c] = -d1[c];
        d3[c] = -d3[c];
      }
      D = -D;
    }
    const double Dp = det(d1, d3);
    const double Dpp = det(d2, d3) + det(d1, d4);
    const double w = std::cbrt(D);
    const double D23 = std::pow(D, 2.0 / 3.0);
    const double wp = Dp / (3 * D23);
    const double wpp = Dpp / (3 * D23) - (2.0 / 9.0) * Dp * Dp / std::pow(D, 5.0 / 3.0);
    V v2, v3;
    for (int c = 0; c < 2; ++c) {
      v2[c] = d2[c] / (w * w) - d1[c] * wp / (w * w * w);
      v3[c] = (d3[c] / (w * w) - 3 * d2[c] * wp / (w * w * w) - d1[c] * wpp / (w * w * w) +
               3 * d1[c] * wp * wp / (w * w * w * w)) / w;
    }
    kappas.push_back(det(v2, v3));
  }
  std::sort(kappas.begin(), kappas.end());
  const size_t m = kappas.size();
  return m % 2 ? kappas[m / 2] : 0.5 * (kappas[m / 2 - 1] + kappas[m / 2]);
}

struct InitialState {
  std::array<double, 2> p0, v0;
};

struct ProbeVerdict {
  TraceStatus status;
  double end_s;
};

inline std::vector<ProbeVerdict> completeness_probe(const Connection& conn, const std::vector<InitialState>& grid,
                                                    double s_max, double tol = 1e-9) {
  std::vector<ProbeVerdict> out;
  for (const auto& st : grid) {
    const auto tr = integrate_geodesic(conn, st.p0, st.v0, s_max, tol);
    out.push_back({tr.status, tr.end_s});
  }
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string trace_to_csv(const GeodesicTrace& trace) {
  std::ostringstream os;
  os << "s,x,y,vx,vy,u\n";
  for (const auto& p : trace.samples)
    os << format_double(p.s) << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
       << format_double(p.vx) << ',' << format_double(p.vy) << ',' << format_double(p.u()) << '\n';
  return os.str();
}

/// Standalone SVG drawing the (x, y) path as a polyline.
inline std::string trace_to_svg(const GeodesicTrace& trace, int size = 480) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& p : trace.samples) {
    if (first) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      first = false;
    }
    xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double margin = 20, scale = (size - 2 * margin) / span;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  char buf[64];
  for (const auto& p : trace.samples) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", margin + (p.x - xmin) * scale, size - margin - (p.y - ymin) * scale);
    os << buf;
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace qhc
