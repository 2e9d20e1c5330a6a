// Exact integer and rational scalars shared by every module.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace torint {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const Integer& r) { return r.convert_to<double>(); }
inline long double to_long_double(const Rational& r) {
  return r.convert_to<long double>();
}

inline std::int64_t to_int64(const Integer& v) { return v.convert_to<std::int64_t>(); }

/// gcd of all entries; 0 for the zero vector.
Integer content(const IntVector& v);

/// v divided by its content (the zero vector is returned unchanged).
IntVector primitive(const IntVector& v);

/// Smallest positive integer multiple of a rational vector that is integral,
/// then made primitive.
IntVector primitive_from_rational(const RatVector& v);

Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RatVector& a, const IntVector& b);

RatVector to_rational(const IntVector& v);
std::vector<double> to_double(const RatVector& v);

bool is_integral(const Rational& r);

/// Exact rational from a decimal or scientific string such as "2/3", "-0.25",
/// "1e6". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);

std::string to_string(const Rational& r);
std::string to_string(const Integer& r);

}  // namespace torint
