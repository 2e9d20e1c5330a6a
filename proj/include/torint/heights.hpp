// Points of T(Q), their toric heights and the integrality test.
#pragma once

#include "torint/fan.hpp"
#include "torint/metric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <map>
#include <vector>

namespace torint {

using Float50 = boost::multiprecision::cpp_bin_float_50;

/// x = (sign_i · Π_p p^{e_{p,i}})_i; exponents[p] is the valuation vector log_p x.
struct TorusPoint {
  std::vector<int> signs;
  std::map<std::uint64_t, std::vector<long long>> exponents;

  /// Throws InputError on a zero coordinate.
  static TorusPoint from_rationals(const std::vector<Rational>& x);
  std::vector<Rational> coordinates() const;
  std::size_t dim() const { return signs.size(); }
};

/// For CANONICAL metrics H = Π_p p^{e_p} with rational e_p (exact); otherwise
/// only the logarithm is known, to double and to 50 digits.
struct HeightValue {
  bool exact = false;
  std::map<std::uint64_t, Rational> prime_exponents;
  double log_value = 0;
  Float50 log_precise = 0;

  double value() const;
};

/// H(x; s) = Π_p exp(φ_s(log_p x) log p) · exp(φ̃_s(log_∞ x)) with
/// log_∞ x = -log|x|; finite places always use the piecewise-linear φ.
class HeightFunction {
 public:
  HeightFunction(const Fan& fan, RatVector s, MetricSpec metric = {});
  HeightValue operator()(const TorusPoint& x) const;
  const FanCharts& charts() const { return metric_.charts(); }
  const RatVector& weights() const { return s_; }

 private:
  RatVector s_;
  ArchimedeanMetric metric_;
};

HeightValue height(const TorusPoint& x, const Fan& fan, const RatVector& s, const MetricSpec& metric = {});

/// Height for the log-anticanonical weights ρ of the pair.
HeightValue height(const TorusPoint& x, const ToricPair& pair, const MetricSpec& metric = {});

/// Sign of H - B. Exact for CANONICAL values; otherwise decided with 50 digits,
/// differences below 1e-40 counting as ties.
int compare_height(const HeightValue& h, const Rational& bound);

/// Every valuation vector lies in the support of Σ_U.
bool is_integral(const TorusPoint& x, const ToricPair& pair);
bool is_integral(const TorusPoint& x, const ToricPair& pair, const FanCharts& charts);

}  // namespace torint
