#include "torint/arith.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace torint {

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, abs(x));
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector primitive_from_rational(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    Integer d = denominator(x);
    l = l / gcd(l, d) * d;
  }
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i] * l);
  return primitive(out);
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVector& a, const IntVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::vector<double> to_double(const RatVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

bool is_integral(const Rational& r) { return denominator(r) == 1; }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty number");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  Integer mantissa = 0;
  long exponent = 0;
  bool any_digit = false;
  bool after_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (after_point) --exponent;
      any_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      throw std::invalid_argument("malformed number '" + text + "'");
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number '" + text + "'");
  if (i < s.size()) {
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + text + "'");
    }
    if (used != s.size() - i - 1) throw std::invalid_argument("malformed exponent in '" + text + "'");
    exponent += e;
  }
  Rational value(mantissa);
  Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0)
    value *= Rational(ten_pow);
  else
    value /= Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  int exp = 0;
  double m = std::frexp(x, &exp);
  // m in [0.5, 1): scale to a 53-bit integer mantissa.
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r{Integer(mant)};
  Integer two_pow = Integer(1) << (exp < 0 ? -exp : exp);
  if (exp >= 0)
    r *= Rational(two_pow);
  else
    r /= Rational(two_pow);
  return r;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const Integer& r) { return r.str(); }

}  // namespace torint
