#include "torint/heights.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace torint {

namespace {

std::map<std::uint64_t, long long> factor(Integer n) {
  std::map<std::uint64_t, long long> out;
  if (n < 0) n = -n;
  for (std::uint64_t p = 2; Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) {
    if (n > Integer(std::numeric_limits<std::uint64_t>::max()))
      throw InputError("point", "prime factor exceeds 64 bits");
    ++out[n.convert_to<std::uint64_t>()];
  }
  return out;
}

Integer lcm_denominators(const std::map<std::uint64_t, Rational>& e) {
  Integer l = 1;
  for (const auto& [p, x] : e) {
    Integer d = denominator(x);
    l = l / gcd(l, d) * d;
  }
  return l;
}

// Sign of Σ_p t_p log p for rational t_p.
int sign_of_log_sum(const std::map<std::uint64_t, Rational>& t) {
  Integer D = lcm_denominators(t);
  Integer pos = 1, neg = 1;
  for (const auto& [p, x] : t) {
    Integer e = numerator(x * Rational(D));
    if (e > 0)
      pos *= boost::multiprecision::pow(Integer(p), e.convert_to<unsigned>());
    else if (e < 0)
      neg *= boost::multiprecision::pow(Integer(p), Integer(-e).convert_to<unsigned>());
  }
  return pos > neg ? 1 : (pos < neg ? -1 : 0);
}

}  // namespace

TorusPoint TorusPoint::from_rationals(const std::vector<Rational>& x) {
  TorusPoint pt;
  const std::size_t d = x.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] == 0) throw InputError("point", "zero coordinate");
    pt.signs.push_back(x[i] > 0 ? 1 : -1);
    for (auto [p, e] : factor(numerator(x[i]))) {
      auto& v = pt.exponents[p];
      v.resize(d, 0);
      v[i] += e;
    }
    for (auto [p, e] : factor(denominator(x[i]))) {
      auto& v = pt.exponents[p];
      v.resize(d, 0);
      v[i] -= e;
    }
  }
  return pt;
}

std::vector<Rational> TorusPoint::coordinates() const {
  std::vector<Rational> x;
  for (int s : signs) x.emplace_back(s);
  for (const auto& [p, v] : exponents)
    for (std::size_t i = 0; i < v.size(); ++i) {
      Integer pw = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(std::llabs(v[i])));
      if (v[i] > 0)
        x[i] *= Rational(pw);
      else if (v[i] < 0)
        x[i] /= Rational(pw);
    }
  return x;
}

double HeightValue::value() const { return std::exp(log_value); }

HeightFunction::HeightFunction(const Fan& fan, RatVector s, MetricSpec metric)
    : s_(std::move(s)), metric_(fan, metric) {
  if (s_.size() != fan.num_rays()) throw std::invalid_argument("height: weight vector has wrong length");
}

HeightValue HeightFunction::operator()(const TorusPoint& x) const {
  const Fan& fan = metric_.fan();
  const std::size_t d = fan.dim();
  if (x.dim() != d) throw std::invalid_argument("height: point has wrong dimension");
  const FanCharts& ch = metric_.charts();

  std::map<std::uint64_t, RatVector> v;
  std::map<std::uint64_t, Rational> phi_finite;
  for (const auto& [p, e] : x.exponents) {
    RatVector vr;
    for (auto c : e) vr.emplace_back(c);
    if (std::all_of(vr.begin(), vr.end(), [](const Rational& r) { return r == 0; })) continue;
    auto c = ch.coordinates(vr);
    phi_finite[p] = dot(s_, c);
    v[p] = std::move(vr);
  }

  HeightValue out;
  if (metric_.spec().mode == MetricMode::Canonical) {
    // cone of u = -Σ_p v_p log p, decided exactly
    std::size_t found = fan.maximal_cones().size();
    for (std::size_t k = 0; k < fan.maximal_cones().size() && found == fan.maximal_cones().size(); ++k) {
      bool inside = true;
      for (std::size_t i = 0; i < d && inside; ++i) {
        std::map<std::uint64_t, Rational> t;
        for (const auto& [p, vp] : v) {
          Rational r = 0;
          for (std::size_t j = 0; j < d; ++j) r += ch.inverse(k)(i, j) * vp[j];
          if (r != 0) t[p] = r;
        }
        if (sign_of_log_sum(t) > 0) inside = false;
      }
      if (inside) found = k;
    }
    RatVector ell(d, Rational(0));
    const auto& cone = fan.maximal_cones()[found];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) ell[j] += s_[cone[i]] * ch.inverse(found)(i, j);
    out.exact = true;
    for (const auto& [p, vp] : v) {
      Rational e = phi_finite[p] - dot(ell, vp);
      if (e != 0) out.prime_exponents[p] = e;
    }
    Float50 lp = 0;
    for (const auto& [p, e] : out.prime_exponents)
      lp += Float50(numerator(e)) / Float50(denominator(e)) * log(Float50(p));
    out.log_precise = lp;
    out.log_value = lp.convert_to<double>();
    return out;
  }

  Float50 lp = 0;
  std::vector<Float50> u(d, Float50(0));
  for (const auto& [p, vp] : v) {
    Float50 lg = log(Float50(p));
    lp += Float50(numerator(phi_finite[p])) / Float50(denominator(phi_finite[p])) * lg;
    for (std::size_t j = 0; j < d; ++j) u[j] -= Float50(numerator(vp[j])) * lg;
  }
  for (std::size_t a = 0; a < fan.num_rays(); ++a) {
    if (s_[a] == 0) continue;
    lp += Float50(numerator(s_[a])) / Float50(denominator(s_[a])) * metric_.smoothed_phi<Float50>(a, u);
  }
  out.log_precise = lp;
  out.log_value = lp.convert_to<double>();
  return out;
}

HeightValue height(const TorusPoint& x, const Fan& fan, const RatVector& s, const MetricSpec& metric) {
  return HeightFunction(fan, s, metric)(x);
}

HeightValue height(const TorusPoint& x, const ToricPair& pair, const MetricSpec& metric) {
  return height(x, pair.fan(), to_rational(pair.rho()), metric);
}

int compare_height(const HeightValue& h, const Rational& bound) {
  if (bound <= 0) return 1;
  if (h.exact) {
    std::map<std::uint64_t, Rational> e = h.prime_exponents;
    Integer D = lcm_denominators(e);
    Integer lhs = boost::multiprecision::pow(denominator(bound), D.convert_to<unsigned>());
    Integer rhs = boost::multiprecision::pow(numerator(bound), D.convert_to<unsigned>());
    for (const auto& [p, x] : e) {
      Integer k = numerator(x * Rational(D));
      if (k > 0)
        lhs *= boost::multiprecision::pow(Integer(p), k.convert_to<unsigned>());
      else
        rhs *= boost::multiprecision::pow(Integer(p), Integer(-k).convert_to<unsigned>());
    }
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  }
  Float50 lb = log(Float50(numerator(bound))) - log(Float50(denominator(bound)));
  Float50 diff = h.log_precise - lb;
  if (abs(diff) < Float50(1e-40)) return 0;
  return diff > 0 ? 1 : -1;
}

bool is_integral(const TorusPoint& x, const ToricPair& pair, const FanCharts& charts) {
  for (const auto& [p, e] : x.exponents) {
    RatVector v;
    for (auto c : e) v.emplace_back(c);
    if (!pair.in_kept_support(charts, v)) return false;
  }
  return true;
}

bool is_integral(const TorusPoint& x, const ToricPair& pair) {
  FanCharts charts(pair.fan());
  return is_integral(x, pair, charts);
}

}  // namespace torint
