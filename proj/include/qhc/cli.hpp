#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qhc/example_torus.hpp"
#include "qhc/geodesics.hpp"
#include "qhc/serialize.hpp"

namespace qhc::cli {

enum ExitCode { kPass = 0, kFail = 1, kInputError = 2 };

/// Parsed command line: the subcommand path plus every flag it may use.
struct CommandConfig {
  std::vector<std::string> command;  // e.g. {"killing", "dim"}
  std::vector<std::string> conn_paths;
  std::string field_path;
  std::vector<std::string> at;
  unsigned max_order = 4;
  std::string p0, v0;
  double smax = 1.0, tol = 1e-9, step = 0.0;
  std::string format = "report";
  std::string out_path;
  std::string mu;
  long long n1 = 0, n2 = 0;
  int window = 1;
  std::string t1, t2;
  bool locus_check = false;
};

/// Reported for usage errors and unreadable inputs (exit code 2).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline io::ConnectionDocument load_connection(const std::string& path) {
  try {
    return io::parse_connection_document(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Rational parse_rational_arg(const std::string& s, const std::string& flag) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw InputError(flag + ": expected a rational NUM or NUM/DEN, got '" + s + "'");
  }
}

inline std::array<double, 2> parse_pair(const std::string& s, const std::string& flag) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError(flag + ": expected X,Y");
  try {
    size_t used = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double x = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const double y = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    return {x, y};
  } catch (const std::exception&) {
    throw InputError(flag + ": expected two numbers X,Y, got '" + s + "'");
  }
}

inline void print_symbols(std::ostream& out, const Connection& c) {
  for (size_t i = 0; i < 6; ++i) out << Connection::kNames[i] << ": " << c.symbol(i) << '\n';
}

inline const std::string& single_conn(const CommandConfig& cfg) {
  if (cfg.conn_paths.size() != 1) throw InputError("--conn expects exactly one path");
  return cfg.conn_paths.front();
}

inline int cmd_conn_show(const CommandConfig& cfg, std::ostream& out) {
  const auto doc = load_connection(single_conn(cfg));
  out << "kind: " << (doc.params ? "normal_form" : "custom") << '\n';
  if (doc.params) {
    out << "family: " << doc.params->str() << '\n';
    const auto [bx, by] = doc.params->basepoint();
    out << "basepoint: (" << bx << ", " << by << ")\n";
    for (const auto& w : warnings(*doc.params)) out << "warning: " << w << '\n';
  }
  out << "domain: " << to_string(doc.conn.domain()) << '\n';
  print_symbols(out, doc.conn);
  out << "torsion-free: " << yes_no(torsion_check(doc.conn)) << '\n';
  return kPass;
}

inline int cmd_conn_curvature(const CommandConfig& cfg, std::ostream& out) {
  const auto doc = load_connection(single_conn(cfg));
  const CurvatureTensor r = curvature(doc.conn);
  out << "Rx_x: " << r.Rx_x << '\n' << "Rx_y: " << r.Rx_y << '\n';
  out << "Ry_x: " << r.Ry_x << '\n' << "Ry_y: " << r.Ry_y << '\n';
  out << "flat: " << yes_no(r.is_zero()) << '\n';
  if (!cfg.locus_check) return kPass;
  const bool axis = curvature_locus_is_axis(doc.conn);
  out << "vanishes on x=0: " << yes_no(axis) << '\n';
  return axis ? kPass : kFail;
}

inline int cmd_killing_verify(const CommandConfig& cfg, std::ostream& out) {
  const auto doc = load_connection(single_conn(cfg));
  if (cfg.field_path.empty()) throw InputError("--field is required");
  VectorField2 v;
  try {
    v = io::field_from_json(io::parse_text(read_file(cfg.field_path)));
  } catch (const ParseError& e) {
    throw ParseError(cfg.field_path + ": " + e.what());
  }
  const KillingResiduals res = killing_residuals(doc.conn, v);
  out << "field: " << v << '\n';
  for (size_t i = 0; i < 6; ++i) out << 'r' << i + 1 << ": " << res.r[i] << '\n';
  out << "killing: " << yes_no(res.all_zero()) << '\n';
  return res.all_zero() ? kPass : kFail;
}

inline int cmd_killing_dim(const CommandConfig& cfg, std::ostream& out) {
  const auto doc = load_connection(single_conn(cfg));
  if (cfg.at.size() != 2) throw InputError("--at expects two values X Y");
  const Rational x0 = parse_rational_arg(cfg.at[0], "--at"), y0 = parse_rational_arg(cfg.at[1], "--at");
  if (cfg.max_order < 2) throw InputError("--max-order must be at least 2");
  const JetReport rep = jet_killing_dimension(doc.conn, x0, y0, cfg.max_order);
  out << "point: (" << rep.x0 << ", " << rep.y0 << ")\n";
  out << "mode: " << (rep.exact ? "exact" : "float") << '\n';
  for (const auto& [order, dim] : rep.dims) out << "order " << order << ": " << dim << '\n';
  out << "stabilized: " << yes_no(rep.stabilized) << '\n';
  out << "final_dim: " << rep.final_dim << '\n';
  return rep.stabilized ? kPass : kFail;
}

inline void emit(const CommandConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.out_path + "'");
  f << text;
}

inline int cmd_geodesic(const CommandConfig& cfg, std::ostream& out) {
  const auto doc = load_connection(single_conn(cfg));
  const auto p0 = parse_pair(cfg.p0, "--p0"), v0 = parse_pair(cfg.v0, "--v0");
  IntegrateOptions opts;
  opts.output_step = cfg.step;
  const GeodesicTrace tr = integrate_geodesic(doc.conn, p0, v0, cfg.smax, cfg.tol, opts);
  if (cfg.format == "csv") {
    emit(cfg, out, trace_to_csv(tr));
  } else if (cfg.format == "svg-plot") {
    emit(cfg, out, trace_to_svg(tr));
  } else {
    std::ostringstream os;
    const auto& last = tr.samples.back();
    os << "status: " << to_string(tr.status) << '\n';
    os << "end_s: " << format_double(tr.end_s) << '\n';
    os << "samples: " << tr.samples.size() << '\n';
    os << "final: " << format_double(last.x) << ", " << format_double(last.y) << '\n';
    os << "final velocity: " << format_double(last.vx) << ", " << format_double(last.vy) << '\n';
    os << "u0: " << format_double(tr.samples.front().u()) << '\n';
    emit(cfg, out, os.str());
  }
  return kPass;
}

inline int cmd_equiv(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.conn_paths.size() != 2) throw InputError("equiv expects --conn twice");
  const auto a = load_connection(cfg.conn_paths[0]), b = load_connection(cfg.conn_paths[1]);
  if (!a.params || !b.params) throw InputError("equiv needs two normal_form documents");
  const ParamClass &p = *a.params, &q = *b.params;
  out << "first: " << p.str() << '\n' << "second: " << q.str() << '\n';
  if (!cfg.mu.empty()) {
    const Rational mu = parse_rational_arg(cfg.mu, "--mu");
    const ParamClass scaled = scale_params(p, mu);
    const bool match = scaled == q;
    out << "mu: " << mu << '\n' << "scaled: " << scaled.str() << '\n' << "equivalent: " << yes_no(match) << '\n';
    return match ? kPass : kFail;
  }
  const auto mu = equivalence_scale(p, q);
  out << "equivalent: " << yes_no(mu.has_value()) << '\n';
  if (mu) out << "mu: " << *mu << '\n';
  const auto [cp, mp] = canonicalize(p);
  const auto [cq, mq] = canonicalize(q);
  out << "canonical first: " << cp.str() << '\n' << "canonical second: " << cq.str() << '\n';
  return mu ? kPass : kFail;
}

inline void print_markings(std::ostream& out, const LeftInvariantConnection& L) {
  const MarkingReport rep = find_markings(L);
  out << "markings: " << rep.markings.size() << '\n';
  for (size_t i = 0; i < rep.markings.size(); ++i) {
    const Marking& m = rep.markings[i];
    out << "marking " << i + 1 << ": ";
    if (m.exact) {
      out << "lambda=" << m.lambda << " alpha=" << m.alpha_m << " delta=" << m.delta_m;
    } else {
      out << "lambda~" << format_double(m.lambda_approx) << " alpha~" << format_double(m.alpha_approx)
          << " delta~" << format_double(m.delta_approx) << " inexact";
    }
    out << " type=" << m.type.str() << " special=" << yes_no(m.type.special) << '\n';
  }
}

inline int cmd_affine_markings(const CommandConfig& cfg, std::ostream& out) {
  const std::string& path = single_conn(cfg);
  LeftInvariantConnection L;
  try {
    L = io::sextuple_from_json(io::parse_text(read_file(path)));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  out << "sextuple: " << L.str() << '\n';
  try {
    print_markings(out, L);
  } catch (const DegenerateCubic& e) {
    out << "degenerate: true\n";
    return kFail;
  }
  return kPass;
}

inline MarkingKind parse_kind(const std::string& s, long long n) {
  if (s.empty()) return boundary_marking(n);
  if (s == "I0") return MarkingKind::I0;
  if (s == "II0") return MarkingKind::II0;
  throw InputError("marking type must be I0 or II0, got '" + s + "'");
}

inline int cmd_affine_solve(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.n1 < 1 || cfg.n2 < 1) throw InputError("--n1 and --n2 must be positive integers");
  const MarkingKind k1 = parse_kind(cfg.t1, cfg.n1), k2 = parse_kind(cfg.t2, cfg.n2);
  const LeftInvariantConnection L = solve_two_markings(k1, Rational(cfg.n1), k2, Rational(cfg.n2));
  out << "sextuple: " << L.str() << '\n';
  print_markings(out, L);
  out << "gamma and phi not both zero: " << yes_no(!(L.gamma.is_zero() && L.phi.is_zero())) << '\n';
  return kPass;
}

inline int cmd_glue_verify(const CommandConfig& cfg, std::ostream& out) {
  const Atlas atlas = build_model_atlas(cfg.n1, cfg.n2, cfg.window);
  const AtlasVerdict v = verify_atlas(atlas);
  out << "model: " << atlas.model.str() << '\n';
  for (const auto& c : atlas.charts) out << "chart " << c.index << ": " << c.params.str() << '\n';
  for (size_t i = 0; i < v.checks.size(); ++i) {
    const auto& c = v.checks[i];
    out << "transition " << i << ": from=" << c.from << " to=" << c.to << " map=" << c.label
        << " isometry=" << yes_no(c.isometry) << '\n';
  }
  out << "atlas: " << (v.ok ? "pass" : "fail") << '\n';
  return v.ok ? kPass : kFail;
}

inline int cmd_example_verify(std::ostream& out) {
  bool all = true;
  for (const auto& [name, ok] : verify_example_torus()) {
    out << name << ": " << yes_no(ok) << '\n';
    all = all && ok;
  }
  out << "result: " << (all ? "pass" : "fail") << '\n';
  return all ? kPass : kFail;
}

inline int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto& c = cfg.command;
    auto is = [&](std::initializer_list<const char*> path) {
      if (c.size() != path.size()) return false;
      size_t i = 0;
      for (const char* p : path)
        if (c[i++] != p) return false;
      return true;
    };
    if (is({"conn", "show"})) return cmd_conn_show(cfg, out);
    if (is({"conn", "curvature"})) return cmd_conn_curvature(cfg, out);
    if (is({"killing", "verify"})) return cmd_killing_verify(cfg, out);
    if (is({"killing", "dim"})) return cmd_killing_dim(cfg, out);
    if (is({"geodesic"})) return cmd_geodesic(cfg, out);
    if (is({"equiv"})) return cmd_equiv(cfg, out);
    if (is({"affine", "markings"})) return cmd_affine_markings(cfg, out);
    if (is({"affine", "solve"})) return cmd_affine_solve(cfg, out);
    if (is({"glue", "verify"})) return cmd_glue_verify(cfg, out);
    if (is({"example", "verify"})) return cmd_example_verify(out);
    throw InputError("unknown command");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

/// Parses argv (without the program name) and runs the command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Quasihomogeneous affine connections on surfaces", "qhc"};
  app.require_subcommand(1);

  auto add_conn = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--conn", cfg.conn_paths, "connection document");
    o->expected(1);
    if (required) o->required();
  };

  auto* conn = app.add_subcommand("conn", "inspect a connection");
  conn->require_subcommand(1);
  auto* show = conn->add_subcommand("show", "print the Christoffel symbols");
  add_conn(show);
  auto* curv = conn->add_subcommand("curvature", "print the curvature tensor");
  add_conn(curv);
  curv->add_flag("--locus-check", cfg.locus_check, "check that the curvature is nonzero and vanishes on x=0");

  auto* killing = app.add_subcommand("killing", "Killing fields");
  killing->require_subcommand(1);
  auto* kverify = killing->add_subcommand("verify", "evaluate the Killing residuals of a field");
  add_conn(kverify);
  kverify->add_option("--field", cfg.field_path, "vector field document")->required();
  auto* kdim = killing->add_subcommand("dim", "local Killing algebra dimension by jet prolongation");
  add_conn(kdim);
  kdim->add_option("--at", cfg.at, "point X Y (rationals)")->expected(2)->required()->allow_extra_args(false);
  kdim->add_option("--max-order", cfg.max_order, "highest prolongation order")->capture_default_str();

  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic");
  add_conn(geo);
  geo->add_option("--p0", cfg.p0, "start point X,Y")->required();
  geo->add_option("--v0", cfg.v0, "start velocity VX,VY")->required();
  geo->add_option("--smax", cfg.smax, "parameter length")->capture_default_str();
  geo->add_option("--tol", cfg.tol, "local error tolerance")->capture_default_str();
  geo->add_option("--step", cfg.step, "uniform output spacing (0: every accepted step)")->capture_default_str();
  geo->add_option("--format", cfg.format, "report, csv or svg-plot")
      ->check(CLI::IsMember({"report", "csv", "svg-plot"}))
      ->capture_default_str();
  geo->add_option("--out", cfg.out_path, "write output to this file");

  auto* equiv = app.add_subcommand("equiv", "parameter equivalence of two normal forms");
  equiv->add_option("--conn", cfg.conn_paths, "normal-form documents (give twice)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->required();
  equiv->add_option("--mu", cfg.mu, "test this scale factor NUM/DEN");

  auto* affine = app.add_subcommand("affine", "left-invariant connections on the affine group");
  affine->require_subcommand(1);
  auto* markings = affine->add_subcommand("markings", "markings of a sextuple");
  add_conn(markings);
  auto* solve = affine->add_subcommand("solve", "connection with two prescribed markings");
  solve->add_option("--n1", cfg.n1, "first marking invariant n")->required();
  solve->add_option("--n2", cfg.n2, "second marking invariant n")->required();
  solve->add_option("--t1", cfg.t1, "first marking type I0 or II0 (default by parity)");
  solve->add_option("--t2", cfg.t2, "second marking type I0 or II0 (default by parity)");

  auto* glue = app.add_subcommand("glue", "global models");
  glue->require_subcommand(1);
  auto* gverify = glue->add_subcommand("verify", "build and verify the model atlas");
  gverify->add_option("--n1", cfg.n1, "first boundary n")->required();
  gverify->add_option("--n2", cfg.n2, "second boundary n")->required();
  gverify->add_option("--window", cfg.window, "charts on each side of the origin")->capture_default_str();

  auto* example = app.add_subcommand("example", "the example torus connection");
  example->require_subcommand(1);
  example->add_subcommand("verify", "check its identities");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    cfg.command.push_back(sub->get_name());
  }
  return run(cfg, out, err);
}

}  // namespace qhc::cli
