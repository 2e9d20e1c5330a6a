#include "torint/local.hpp"

#include "torint/primes.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace torint {

namespace {

Rational rpow(const Rational& base, long e) {
  Rational out = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  for (long i = 0; i < std::labs(e); ++i) out *= b;
  return out;
}

std::vector<Rational> s_by_ray(const ToricPair& pair, const RatVector& s) {
  const std::size_t n = pair.fan().num_rays();
  std::vector<Rational> out(n, Rational(0));
  if (s.size() == pair.kept().size()) {
    for (std::size_t i = 0; i < s.size(); ++i) out[pair.kept()[i]] = s[i];
  } else if (s.size() == n) {
    for (auto a : pair.kept()) out[a] = s[a];
  } else {
    throw std::invalid_argument("denef_local: s must be indexed by A_U or by all rays");
  }
  return out;
}

bool kept_cone(const ToricPair& pair, const RaySet& c) {
  for (auto a : c)
    if (pair.is_removed(a)) return false;
  return true;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

RatVector rho_on_kept(const ToricPair& pair) { return RatVector(pair.kept().size(), Rational(1)); }

LocalDensity denef_local(const ToricPair& pair, std::uint64_t p, const RatVector& s) {
  if (!is_prime(p)) throw std::invalid_argument("denef_local: " + std::to_string(p) + " is not prime");
  const auto sr = s_by_ray(pair, s);
  for (auto a : pair.kept())
    if (sr[a] <= 0) throw PoleError("denef_local: s_α must be positive on A_U");
  const long d = static_cast<long>(pair.dim());
  const Rational q(static_cast<long long>(p));
  bool exact = true;
  for (auto a : pair.kept())
    if (!is_integral(sr[a]) || sr[a] > 4096) exact = false;

  Rational sum = 0;
  double sum_d = 0;
  const double qd = static_cast<double>(p);
  for (const auto& cone : pair.fan().cones()) {
    if (!kept_cone(pair, cone)) continue;
    const long k = static_cast<long>(cone.size());
    Rational term = rpow(q - 1, d - k);
    double term_d = std::pow(qd - 1, static_cast<double>(d - k));
    for (auto a : cone) {
      double sa = to_double(sr[a]);
      term_d *= (qd - 1) / std::expm1(sa * std::log(qd));
      if (exact) term *= (q - 1) / (rpow(q, to_int64(numerator(sr[a]))) - 1);
    }
    sum_d += term_d;
    if (exact) sum += term;
  }
  LocalDensity out;
  out.p = p;
  out.s.clear();
  for (auto a : pair.kept()) out.s.push_back(sr[a]);
  out.value_double = sum_d / std::pow(qd - 1, static_cast<double>(d));
  out.density_double = sum_d / std::pow(qd, static_cast<double>(d));
  if (exact) {
    out.value = sum / rpow(q - 1, d);
    out.density = sum / rpow(q, d);
    out.value_double = to_double(*out.value);
    out.density_double = to_double(*out.density);
  }
  return out;
}

Rational residue_class_density(const ToricPair& pair, std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("residue_class_density: p is not prime");
  const Fan& fan = pair.fan();
  const std::size_t n = fan.num_rays();
  const std::size_t d = fan.dim();
  std::uint64_t modulus = 1;
  for (unsigned i = 0; i < k; ++i) modulus *= p;
  double work = std::pow(static_cast<double>(modulus), static_cast<double>(n));
  if (n > 20 || work > 2e9) throw std::invalid_argument("residue_class_density: enumeration too large");

  std::vector<char> allowed(std::size_t(1) << n, 0);
  for (const auto& cone : fan.cones()) {
    if (!kept_cone(pair, cone)) continue;
    std::size_t mask = 0;
    for (auto a : cone) mask |= std::size_t(1) << a;
    allowed[mask] = 1;
  }
  // odometer over the first n-1 coordinates; literal scan of the last one
  std::vector<std::uint64_t> z(n, 0);
  std::uint64_t count = 0;
  const std::size_t last = n - 1;
  for (;;) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < last; ++i)
      if (z[i] % p == 0) mask |= std::size_t(1) << i;
    const std::size_t hi = std::size_t(1) << last;
    for (std::uint64_t v = 0; v < modulus; ++v) count += allowed[(v % p == 0) ? (mask | hi) : mask];
    std::size_t i = 0;
    while (i < last && ++z[i] == modulus) z[i++] = 0;
    if (i == last) break;
  }
  Integer units = Integer(modulus) - Integer(modulus / p);
  Integer denom = 1;
  for (std::size_t i = 0; i + d < n; ++i) denom *= units;
  for (std::size_t i = 0; i < d; ++i) denom *= Integer(modulus);
  return Rational(Integer(count), denom);
}

Rational euler_factor(const ToricPair& pair, std::uint64_t p) {
  const Integer q(p);
  Integer count = subfan_point_count(pair.fan(), pair.kept_mask(), q);
  const long d = static_cast<long>(pair.dim());
  const long a = static_cast<long>(pair.kept().size());
  Rational qr(q);
  return Rational(count) / rpow(qr, d) * rpow((qr - 1) / qr, a - d);
}

std::size_t euler_second_order_constant(const ToricPair& pair) {
  std::size_t cones = 0;
  for (const auto& c : pair.fan().cones())
    if (kept_cone(pair, c)) ++cones;
  return (std::size_t(1) << pair.kept().size()) - cones;
}

EulerProductResult finite_tamagawa(const ToricPair& pair, std::uint64_t prime_bound, bool keep_factors) {
  const std::size_t a = pair.kept().size();
  // non-cone subsets of A_U by size
  std::vector<double> non_cone(a + 1, 0.0);
  {
    std::vector<double> binom(a + 1, 0.0);
    binom[0] = 1;
    for (std::size_t i = 1; i <= a; ++i)
      for (std::size_t j = i; j > 0; --j) binom[j] += binom[j - 1];
    for (std::size_t j = 0; j <= a; ++j) non_cone[j] = binom[j];
    for (const auto& c : pair.fan().cones())
      if (kept_cone(pair, c)) non_cone[c.size()] -= 1;
  }
  EulerProductResult out;
  out.prime_bound = prime_bound;
  out.constant = euler_second_order_constant(pair);
  long double log_sum = 0;
  for (auto p : primes_up_to(prime_bound)) {
    const double u = 1.0 / p;
    double h = 0;
    for (std::size_t j = 0; j <= a; ++j)
      if (non_cone[j] != 0) h += non_cone[j] * std::pow(u, double(j)) * std::pow(1 - u, double(a - j));
    const double lf = std::log1p(-h);
    log_sum += lf;
    if (keep_factors) out.factors.emplace_back(p, lf);
  }
  out.value = std::exp(static_cast<double>(log_sum));
  const double K = static_cast<double>(out.constant);
  const double P = static_cast<double>(prime_bound);
  if (K == 0)
    out.tail_bound = 0;
  else if (P >= 2 && P * P >= 2 * K)
    out.tail_bound = 2 * K / P;
  else
    out.tail_bound = std::numeric_limits<double>::infinity();
  // every omitted factor lies in (0, 1]
  out.upper = out.value;
  out.lower = out.value * std::exp(-out.tail_bound);
  return out;
}

namespace {

using Integrand = std::function<double(const std::vector<double>&)>;

double nested_integral(const Integrand& f, std::size_t m, double tol, unsigned depth, double& err) {
  std::vector<double> t(m, 0.0);
  err = 0;
  std::function<double(std::size_t)> level = [&](std::size_t j) -> double {
    if (j == m) return f(t);
    auto g = [&, j](double x) {
      t[j] = x;
      return level(j + 1);
    };
    double e = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        g, 0.0, std::numeric_limits<double>::infinity(), depth, tol, &e);
    if (j == 0) err = e;
    return v;
  };
  return level(0);
}

}  // namespace

ResidueMeasureResult residue_measure(const ToricPair& pair, const RaySet& face, const MetricSpec& metric,
                                     const QuadratureSpec& quad) {
  const Fan& fan = pair.fan();
  const std::size_t d = fan.dim();
  ArchimedeanMetric arch(fan, metric);
  StarFan star = star_fan(fan, face);
  const std::size_t m = d - face.size();
  IntegerMatrix b = unimodular_completion(fan, face);

  std::vector<bool> in_face(fan.num_rays(), false);
  for (auto a : face) in_face[a] = true;

  // Smoothed: surviving linear pieces of each β ∉ A, pulled back to the quotient.
  std::vector<std::vector<std::vector<double>>> pieces;
  if (metric.mode == MetricMode::Smoothed) {
    for (std::size_t beta = 0; beta < fan.num_rays(); ++beta) {
      if (in_face[beta]) continue;
      std::vector<std::vector<double>> per;
      for (std::size_t s = 0; s < fan.maximal_cones().size(); ++s) {
        const RatVector& l = arch.piece(beta, s);
        bool survives = true;
        for (auto a : face)
          if (dot(l, fan.ray(a)) != 0) survives = false;
        if (!survives) continue;
        std::vector<double> w(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
          Rational acc = 0;
          for (std::size_t i = 0; i < d; ++i) acc += l[i] * Rational(b(i, face.size() + j));
          w[j] = to_double(acc);
        }
        per.push_back(std::move(w));
      }
      pieces.push_back(std::move(per));
    }
  }
  auto exponent_at = [&](const std::vector<double>& w) {
    double total = 0;
    for (const auto& per : pieces) {
      double mx = -std::numeric_limits<double>::infinity();
      std::vector<double> vals;
      for (const auto& l : per) {
        double v = 0;
        for (std::size_t j = 0; j < m; ++j) v += l[j] * w[j];
        vals.push_back(metric.k * v);
        mx = std::max(mx, metric.k * v);
      }
      double sum = 0;
      for (double v : vals) sum += std::exp(v - mx);
      total += (mx + std::log(sum)) / metric.k;
    }
    return total;
  };

  ResidueMeasureResult out;
  out.face = face;
  out.metric = metric;
  const double scale = std::ldexp(1.0, static_cast<int>(d));

  if (m == 0) {
    out.star_cones = 1;
    double e = metric.mode == MetricMode::Smoothed ? exponent_at({}) : 0.0;
    out.value = scale * std::exp(-e);
    return out;
  }

  std::optional<FanCharts> star_charts;
  if (metric.mode == MetricMode::Canonical) star_charts.emplace(star.fan);
  Integrand integrand_w = [&](const std::vector<double>& w) {
    double e;
    if (metric.mode == MetricMode::Canonical) {
      e = 0;
      for (double c : star_charts->coordinates(w)) e += c;
    } else {
      e = exponent_at(w);
    }
    return std::exp(-e);
  };

  double total = 0, total_err = 0, coarse = 0;
  const auto& cones = star.fan.maximal_cones();
  out.star_cones = cones.size();
  for (const auto& cone : cones) {
    Integrand on_cone = [&](const std::vector<double>& t) {
      std::vector<double> w(m, 0.0);
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) w[i] += t[j] * to_double(star.fan.ray(cone[j])[i]);
      return integrand_w(w);
    };
    double err = 0, err2 = 0;
    total += nested_integral(on_cone, m, quad.rel_tol, quad.max_depth, err);
    total_err += err;
    coarse += nested_integral(on_cone, m, std::sqrt(quad.rel_tol), quad.max_depth, err2);
  }
  out.value = scale * total;
  out.est_error = scale * (total_err + std::abs(total - coarse));
  if (!std::isfinite(out.value) || out.est_error > 1e-4 * std::abs(out.value))
    throw ConvergenceError("residue_measure: quadrature did not reach tolerance (estimate " +
                           std::to_string(out.value) + " ± " + std::to_string(out.est_error) + ")");
  return out;
}

TubeOracleResult tube_oracle(const ToricPair& pair, const RaySet& face, const MetricSpec& metric,
                             const std::vector<double>& epsilons, std::size_t samples, std::uint64_t seed) {
  const Fan& fan = pair.fan();
  const std::size_t d = fan.dim();
  const std::size_t ka = face.size();
  ArchimedeanMetric arch(fan, metric);
  IntegerMatrix bi = unimodular_completion(fan, face);
  std::vector<std::vector<double>> b(d, std::vector<double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) b[i][j] = to_double(bi(i, j));
  const double scale = std::ldexp(1.0, static_cast<int>(d));
  const double pi = 3.14159265358979323846;
  const double cauchy_c = 3.0, cauchy_w = 2.0;

  TubeOracleResult out;
  std::vector<double> eps = epsilons;
  if (ka == 0) eps = {1.0};
  for (std::size_t e = 0; e < eps.size(); ++e) {
    if (!(eps[e] > 0 && eps[e] < 1) && ka > 0) throw std::invalid_argument("tube_oracle: ε must lie in (0, 1)");
    const double L = ka > 0 ? -std::log(eps[e]) : 0.0;
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (e + 1));
    double mean = 0, m2 = 0;
    std::vector<double> cw(d), u(d);
    for (std::size_t n = 1; n <= samples; ++n) {
      double log_q = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (i < ka) {
          double r = uniform01(rng), x;
          if (uniform01(rng) < 0.5) {
            x = r < 0.5 ? L + std::log(2 * r + 1e-300) : L - std::log(2 * (1 - r) + 1e-300);
          } else {
            x = L + cauchy_c * std::tan(pi * (r - 0.5));
          }
          double lap = 0.5 * std::exp(-std::abs(x - L));
          double cau = 1.0 / (pi * cauchy_c * (1 + (x - L) * (x - L) / (cauchy_c * cauchy_c)));
          log_q += std::log(0.5 * lap + 0.5 * cau);
          cw[i] = x;
        } else {
          double x = cauchy_w * std::tan(pi * (uniform01(rng) - 0.5));
          log_q += -std::log(pi * cauchy_w * (1 + x * x / (cauchy_w * cauchy_w)));
          cw[i] = x;
        }
      }
      for (std::size_t i = 0; i < d; ++i) {
        u[i] = 0;
        for (std::size_t j = 0; j < d; ++j) u[i] += b[i][j] * cw[j];
      }
      double w = 0;
      auto phis = arch.phis(u);
      bool inside = true;
      for (auto a : face)
        if (!(phis[a] > L)) inside = false;
      if (inside) {
        double total = 0;
        for (double v : phis) total += v;
        w = scale * std::exp(-total + static_cast<double>(ka) * L - log_q);
      }
      double delta = w - mean;
      mean += delta / static_cast<double>(n);
      m2 += delta * (w - mean);
    }
    TubeEstimate est;
    est.epsilon = eps[e];
    est.value = mean;
    est.samples = samples;
    est.stderr_ = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples)) : 0;
    out.estimates.push_back(est);
  }
  out.limit = out.estimates.back();
  for (const auto& est : out.estimates)
    if (est.epsilon < out.limit.epsilon) out.limit = est;
  return out;
}

}  // namespace torint
