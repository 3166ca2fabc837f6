#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "qhc/errors.hpp"

namespace qhc {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0)
      v_ = boost::multiprecision::cpp_rational(BigInt(-num), BigInt(-den));
    else
      v_ = boost::multiprecision::cpp_rational(num, den);
  }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
      return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    }
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }
  double to_double() const { return v_.convert_to<double>(); }

  /// Value as a machine integer; throws when not an integer in range.
  long long to_int64() const {
    if (!is_integer()) throw std::domain_error("Rational: not an integer: " + str());
    const BigInt n = numerator();
    if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN))
      throw std::overflow_error("Rational: integer out of range: " + str());
    return n.convert_to<long long>();
  }

  std::string str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  Rational operator-() const { return from_raw(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from_raw(boost::multiprecision::cpp_rational v) {
    Rational r;
    r.v_ = std::move(v);
    return r;
  }
  boost::multiprecision::cpp_rational v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// r^e for integer e (e < 0 requires r != 0).
inline Rational pow_int(const Rational& r, long long e) {
  if (e < 0) {
    if (r.is_zero()) throw DomainError("0 raised to a negative power");
    return pow_int(Rational(1) / r, -e);
  }
  Rational result(1), base = r;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

namespace detail {

inline BigInt pow_big(const BigInt& b, unsigned e) { return boost::multiprecision::pow(b, e); }

/// floor(x^(1/k)) for x >= 0.
inline BigInt integer_root(const BigInt& x, unsigned k) {
  if (x < 2 || k == 1) return x;
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  BigInt lo = 0, hi = BigInt(1) << (bits / k + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (pow_big(mid, k) <= x) lo = mid; else hi = mid - 1;
  }
  return lo;
}

inline std::optional<BigInt> exact_root(const BigInt& x, unsigned k) {
  BigInt r = integer_root(x, k);
  if (pow_big(r, k) == x) return r;
  return std::nullopt;
}

}  // namespace detail

/// Exact k-th root of a nonnegative rational, if it is rational.
inline std::optional<Rational> rational_root(const Rational& r, unsigned k) {
  if (r.sign() < 0) return std::nullopt;
  auto n = detail::exact_root(r.numerator(), k);
  if (!n) return std::nullopt;
  auto d = detail::exact_root(r.denominator(), k);
  if (!d) return std::nullopt;
  return Rational(*n, *d);
}

/// base^exponent for a rational exponent, exactly.
/// Negative bases only admit integer exponents (SignError otherwise); an
/// irrational result raises ExactnessError.
inline Rational rational_power(const Rational& base, const Rational& exponent) {
  if (exponent.is_integer()) return pow_int(base, exponent.to_int64());
  if (base.sign() < 0)
    throw SignError("(" + base.str() + ")^(" + exponent.str() + ") has no real rational branch");
  if (base.is_zero()) {
    if (exponent.sign() < 0) throw DomainError("0 raised to a negative power");
    return Rational(0);
  }
  const BigInt q = exponent.denominator();
  if (q > 1u << 20) throw ExactnessError("root index too large: " + exponent.str());
  auto root = rational_root(base, q.convert_to<unsigned>());
  if (!root) throw ExactnessError(base.str() + "^(" + exponent.str() + ") is irrational");
  return pow_int(*root, exponent.numerator().convert_to<long long>());
}

}  // namespace qhc

template <>
struct std::hash<qhc::Rational> {
  size_t operator()(const qhc::Rational& r) const { return std::hash<std::string>{}(r.str()); }
};
