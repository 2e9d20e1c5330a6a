// Brute-force census over numerators and denominators, for fans of dimension
// at most 2. Shares no code with the library search beyond the fan data.
#pragma once

#include "torint/fan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace naive {

struct Chart {
  std::vector<std::size_t> rays;
  double inv[2][2];
};

struct Model {
  std::size_t d;
  std::vector<std::vector<double>> rays;
  std::vector<Chart> charts;
  std::vector<double> rho;
  std::vector<bool> kept;
};

inline Model make_model(const torint::ToricPair& pair) {
  Model m;
  const auto& fan = pair.fan();
  m.d = fan.dim();
  for (std::size_t a = 0; a < fan.num_rays(); ++a) {
    std::vector<double> r;
    for (const auto& x : fan.ray(a)) r.push_back(x.convert_to<double>());
    m.rays.push_back(r);
    m.rho.push_back(pair.is_removed(a) ? 0.0 : 1.0);
    m.kept.push_back(!pair.is_removed(a));
  }
  for (const auto& cone : fan.maximal_cones()) {
    Chart c;
    c.rays = cone;
    if (m.d == 1) {
      c.inv[0][0] = 1.0 / m.rays[cone[0]][0];
    } else {
      const auto& a = m.rays[cone[0]];
      const auto& b = m.rays[cone[1]];
      double det = a[0] * b[1] - a[1] * b[0];
      c.inv[0][0] = b[1] / det;
      c.inv[0][1] = -b[0] / det;
      c.inv[1][0] = -a[1] / det;
      c.inv[1][1] = a[0] / det;
    }
    m.charts.push_back(c);
  }
  return m;
}

// Coefficients of v on the rays of the cone containing it.
inline bool coefficients(const Model& m, const double* v, std::size_t& chart, double* coef) {
  for (std::size_t k = 0; k < m.charts.size(); ++k) {
    const auto& c = m.charts[k];
    bool ok = true;
    for (std::size_t i = 0; i < m.d; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < m.d; ++j) s += c.inv[i][j] * v[j];
      coef[i] = s;
      if (s < -1e-9) ok = false;
    }
    if (ok) {
      chart = k;
      return true;
    }
  }
  return false;
}

inline double phi_rho(const Model& m, const double* v) {
  std::size_t k = 0;
  double coef[2];
  coefficients(m, v, k, coef);
  double s = 0;
  for (std::size_t i = 0; i < m.d; ++i) s += coef[i] * m.rho[m.charts[k].rays[i]];
  return s;
}

inline bool in_kept_support(const Model& m, const double* v) {
  std::size_t k = 0;
  double coef[2];
  coefficients(m, v, k, coef);
  for (std::size_t i = 0; i < m.d; ++i)
    if (coef[i] > 1e-9 && !m.kept[m.charts[k].rays[i]]) return false;
  return true;
}

// min of φ_ρ(w) / |w|_∞ over the kept support: attained at normalized rays of
// Σ_U or at cube corners inside the support (dimension <= 2).
inline double support_constant(const Model& m) {
  std::vector<std::vector<double>> tests;
  for (std::size_t a = 0; a < m.rays.size(); ++a) {
    if (!m.kept[a]) continue;
    double n = 0;
    for (double x : m.rays[a]) n = std::max(n, std::abs(x));
    std::vector<double> w;
    for (double x : m.rays[a]) w.push_back(x / n);
    tests.push_back(w);
  }
  if (m.d == 2)
    for (int s0 : {-1, 1})
      for (int s1 : {-1, 1}) tests.push_back({double(s0), double(s1)});
  double c = 1e300;
  for (const auto& w : tests)
    if (in_kept_support(m, w.data())) c = std::min(c, phi_rho(m, w.data()));
  return c;
}

struct Factored {
  double log_abs;                                    // log|value|
  std::vector<std::pair<std::uint32_t, int>> fac;    // prime, signed exponent (sorted)
};

// All a/b in lowest terms with a*b <= limit.
inline std::vector<Factored> coordinate_values(std::uint64_t limit) {
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (spf[i] == 0)
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  auto factor = [&](std::uint64_t n, int sign, std::vector<std::pair<std::uint32_t, int>>& out) {
    while (n > 1) {
      std::uint32_t p = spf[n];
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, sign * e);
    }
  };
  std::vector<Factored> out;
  for (std::uint64_t a = 1; a <= limit; ++a)
    for (std::uint64_t b = 1; a * b <= limit; ++b) {
      if (std::gcd(a, b) != 1) continue;
      Factored f;
      f.log_abs = std::log(double(a)) - std::log(double(b));
      factor(a, 1, f.fac);
      factor(b, -1, f.fac);
      std::sort(f.fac.begin(), f.fac.end());
      out.push_back(std::move(f));
    }
  return out;
}

// N(B) for each bound (sorted ascending), counting sign choices.
inline std::vector<std::uint64_t> count(const torint::ToricPair& pair, const std::vector<double>& bounds) {
  Model m = make_model(pair);
  const double bmax = bounds.back();
  std::vector<std::uint64_t> out(bounds.size(), 0);
  if (bmax < 1) return out;
  const double c = support_constant(m);
  const auto limit = static_cast<std::uint64_t>(std::floor(std::pow(bmax, 1.0 / c) * (1 + 1e-12)));
  auto values = coordinate_values(std::max<std::uint64_t>(limit, 1));
  const double log_bmax = std::log(bmax);
  auto tally = [&](double log_h) {
    for (std::size_t i = 0; i < bounds.size(); ++i)
      if (log_h <= std::log(bounds[i]) + 1e-9) ++out[i];
  };
  const std::uint64_t signs = std::uint64_t(1) << m.d;
  if (m.d == 1) {
    for (const auto& x : values) {
      double fin = 0;
      bool ok = true;
      for (auto [p, e] : x.fac) {
        double v = e;
        if (!in_kept_support(m, &v)) ok = false;
        fin += phi_rho(m, &v) * std::log(double(p));
      }
      if (!ok || fin > log_bmax + 1e-9) continue;
      double u = -x.log_abs;
      tally(fin + phi_rho(m, &u));
    }
  } else {
    for (const auto& x : values)
      for (const auto& y : values) {
        double fin = 0;
        bool ok = true;
        std::size_t i = 0, j = 0;
        while (ok && (i < x.fac.size() || j < y.fac.size())) {
          std::uint32_t p;
          double v[2] = {0, 0};
          if (j == y.fac.size() || (i < x.fac.size() && x.fac[i].first < y.fac[j].first)) {
            p = x.fac[i].first;
            v[0] = x.fac[i++].second;
          } else if (i == x.fac.size() || y.fac[j].first < x.fac[i].first) {
            p = y.fac[j].first;
            v[1] = y.fac[j++].second;
          } else {
            p = x.fac[i].first;
            v[0] = x.fac[i++].second;
            v[1] = y.fac[j++].second;
          }
          if (!in_kept_support(m, v)) ok = false;
          fin += phi_rho(m, v) * std::log(double(p));
          if (fin > log_bmax + 1e-9) ok = false;
        }
        if (!ok) continue;
        double u[2] = {-x.log_abs, -y.log_abs};
        tally(fin + phi_rho(m, u));
      }
  }
  for (auto& n : out) n *= signs;
  return out;
}

}  // namespace naive
