#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "qhc/affine_model.hpp"
#include "qhc/catalog.hpp"

namespace qhc::io {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("document") : path) + ": " + what);
}

inline json integer_to_json(const BigInt& v) {
  if (v >= BigInt(INT64_MIN) && v <= BigInt(INT64_MAX)) return v.convert_to<long long>();
  return v.str();
}

inline BigInt integer_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      fail(path, "expected an integer, got \"" + s + "\"");
    return BigInt(s);
  }
  fail(path, "expected an integer");
}

inline json to_json(const Rational& r) { return json::array({integer_to_json(r.numerator()), integer_to_json(r.denominator())}); }

inline Rational rational_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a rational [numerator, denominator]");
  const BigInt num = integer_from_json(j[0], path + "[0]");
  const BigInt den = integer_from_json(j[1], path + "[1]");
  if (den == 0) fail(path, "zero denominator");
  return Rational(num, den);
}

inline json to_json(const PuiseuxPoly& p) {
  json out = json::array();
  for (const auto& m : p.monomials()) out.push_back({{"c", to_json(m.coeff)}, {"xe", to_json(m.xexp)}, {"ye", m.yexp}});
  return out;
}

inline PuiseuxPoly poly_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of terms");
  PuiseuxPoly p;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "]";
    const json& t = j[i];
    if (!t.is_object()) fail(tp, "expected a term object {c, xe, ye}");
    if (!t.contains("c")) fail(tp, "missing field \"c\"");
    const Rational c = rational_from_json(t["c"], tp + ".c");
    const Rational xe = t.contains("xe") ? rational_from_json(t["xe"], tp + ".xe") : Rational(0);
    long long ye = 0;
    if (t.contains("ye")) {
      if (!t["ye"].is_number_integer() || t["ye"].get<long long>() < 0) fail(tp + ".ye", "expected a natural number");
      ye = t["ye"].get<long long>();
    }
    p.add_term(c, xe, static_cast<unsigned>(ye));
  }
  return p;
}

inline json to_json(const MonoTriMap& f) {
  return {{"c", to_json(f.c())}, {"r", to_json(f.r())}, {"a", to_json(f.a())}, {"s", to_json(f.s())}, {"g", to_json(f.g())}};
}

inline MonoTriMap map_from_json(const json& j, const std::string& path = "map") {
  if (!j.is_object()) fail(path, "expected an object");
  auto field = [&](const char* k) -> Rational {
    if (!j.contains(k)) fail(path, std::string("missing field \"") + k + "\"");
    return rational_from_json(j[k], path + "." + k);
  };
  const PuiseuxPoly g = j.contains("g") ? poly_from_json(j["g"], path + ".g") : PuiseuxPoly();
  try {
    return {field("c"), field("r"), field("a"), field("s"), g};
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

inline json to_json(const VectorField2& v) { return {{"cx", to_json(v.cx)}, {"cy", to_json(v.cy)}}; }

inline VectorField2 field_from_json(const json& j, const std::string& path = "field") {
  if (!j.is_object()) fail(path, "expected an object {cx, cy}");
  VectorField2 v;
  if (j.contains("cx")) v.cx = poly_from_json(j["cx"], path + ".cx");
  if (j.contains("cy")) v.cy = poly_from_json(j["cy"], path + ".cy");
  if (!j.contains("cx") && !j.contains("cy")) fail(path, "needs at least one of \"cx\", \"cy\"");
  return v;
}

inline json to_json(const LeftInvariantConnection& L) {
  return {{"alpha", to_json(L.alpha)}, {"beta", to_json(L.beta)},       {"gamma", to_json(L.gamma)},
          {"delta", to_json(L.delta)}, {"epsilon", to_json(L.epsilon)}, {"phi", to_json(L.phi)}};
}

inline LeftInvariantConnection sextuple_from_json(const json& j, const std::string& path = "sextuple") {
  if (!j.is_object()) fail(path, "expected an object");
  auto field = [&](const char* k) -> Rational {
    if (!j.contains(k)) fail(path, std::string("missing field \"") + k + "\"");
    return rational_from_json(j[k], path + "." + k);
  };
  return {field("alpha"), field("beta"), field("gamma"), field("delta"), field("epsilon"), field("phi")};
}

inline json to_json(const ParamClass& p) {
  json out{{"kind", "normal_form"}, {"family", to_string(p.family)}};
  if (has_n(p.family)) {
    out["n"] = to_json(p.n);
    out["params"] = {{"gamma", to_json(p.gamma)}, {"phi", to_json(p.phi)}, {"epsilon", to_json(p.epsilon)}};
  }
  if (p.family == Family::III) out["params"] = {{"gamma", to_json(p.gamma)}, {"epsilon", to_json(p.epsilon)}};
  return out;
}

inline json to_json(const Connection& c) {
  json sym = json::object();
  for (size_t i = 0; i < 6; ++i) sym[Connection::kNames[i]] = to_json(c.symbol(i));
  return {{"kind", "custom"}, {"christoffel", sym}, {"domain", to_string(c.domain())}};
}

/// A parsed connection document: the connection, plus its parameters when it names a normal form.
struct ConnectionDocument {
  Connection conn;
  std::optional<ParamClass> params;
};

inline ParamClass params_from_json(const json& j) {
  if (!j.contains("family") || !j["family"].is_string()) fail("family", "missing or not a string");
  Family fam;
  try {
    fam = family_from_string(j["family"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail("family", e.what());
  }
  if (fam == Family::flat) return ParamClass::flat();
  if (fam == Family::example) return ParamClass::example();
  if (!j.contains("params") || !j["params"].is_object()) fail("params", "missing or not an object");
  const json& pj = j["params"];
  auto param = [&](const char* k, bool required) -> Rational {
    if (!pj.contains(k)) {
      if (required) fail(std::string("params.") + k, "missing");
      return Rational(0);
    }
    return rational_from_json(pj[k], std::string("params.") + k);
  };
  if (fam == Family::III) {
    if (pj.contains("phi")) fail("params.phi", "Type III has no phi parameter");
    return ParamClass::type_III(param("gamma", true), param("epsilon", true));
  }
  if (!j.contains("n")) fail("n", "missing");
  const Rational n = rational_from_json(j["n"], "n");
  return {fam, n, param("gamma", true), param("phi", true), param("epsilon", true)};
}

inline Connection custom_from_json(const json& j) {
  if (!j.contains("christoffel") || !j["christoffel"].is_object()) fail("christoffel", "missing or not an object");
  const json& cj = j["christoffel"];
  Connection::Symbols s;
  for (size_t i = 0; i < 6; ++i) {
    const char* name = Connection::kNames[i];
    if (!cj.contains(name)) fail(std::string("christoffel.") + name, "missing");
    s[i] = poly_from_json(cj[name], std::string("christoffel.") + name);
  }
  // Gamma^k_21 may be given explicitly but must agree with Gamma^k_12.
  const std::pair<const char*, size_t> mirrors[] = {{"G211", 2}, {"G212", 3}};
  for (const auto& [name, idx] : mirrors) {
    if (!cj.contains(name)) continue;
    if (poly_from_json(cj[name], std::string("christoffel.") + name) != s[idx])
      fail(std::string("christoffel.") + name, "asymmetric symbols (connection has torsion)");
  }
  for (const auto& [key, value] : cj.items()) {
    bool known = key == "G211" || key == "G212";
    for (const char* n : Connection::kNames) known = known || key == n;
    if (!known) fail("christoffel." + key, "unknown symbol name");
  }
  if (!j.contains("domain")) return Connection(std::move(s), "custom");
  if (!j["domain"].is_string()) fail("domain", "expected a string");
  const std::string d = j["domain"].get<std::string>();
  try {
    if (d == "right-half-plane") return Connection(std::move(s), Domain::right_half_plane, "custom");
    if (d == "whole-plane") return Connection(std::move(s), Domain::whole_plane, "custom");
  } catch (const std::invalid_argument& e) {
    fail("domain", e.what());
  }
  fail("domain", "expected \"whole-plane\" or \"right-half-plane\", got \"" + d + "\"");
}

/// Parses JSON text; syntax errors are reported with line and column.
inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

inline ConnectionDocument parse_connection_document(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) fail("", "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) fail("kind", "missing or not a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "custom") return {custom_from_json(j), std::nullopt};
  if (kind == "normal_form") {
    ParamClass p = params_from_json(j);
    return {make_normal_form(p), p};
  }
  fail("kind", "expected \"custom\" or \"normal_form\", got \"" + kind + "\"");
}

inline json to_json(const ConnectionDocument& doc) { return doc.params ? to_json(*doc.params) : to_json(doc.conn); }

}  // namespace qhc::io
