#include "torint/chi.hpp"

#include "torint/divisors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace torint {

ChiQuery make_chi_query(const ToricPair& pair, const RaySet& face, const RatVector& lambda) {
  ChiQuery q;
  q.coords = pair.kept();
  q.coords.insert(q.coords.end(), face.begin(), face.end());
  std::sort(q.coords.begin(), q.coords.end());
  q.coords.erase(std::unique(q.coords.begin(), q.coords.end()), q.coords.end());
  q.embedding = ray_pairing(pair.fan(), q.coords);
  for (auto a : q.coords) q.point.push_back(lambda.at(a));
  return q;
}

namespace {

void check_query(const ChiQuery& q) {
  if (q.coords.empty() || rank(q.embedding) != q.embedding.cols())
    throw ConsistencyError("M does not embed into V_A");
  for (const auto& x : q.point)
    if (x <= 0) throw PoleError("λ̃ must have positive coordinates");
}

}  // namespace

RationalCone quotient_region(const ChiQuery& q) {
  const std::size_t n = q.coords.size();
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    gens.push_back(e);
  }
  for (std::size_t j = 0; j < q.embedding.cols(); ++j) {
    IntVector c = q.embedding.col(j);
    gens.push_back(c);
    for (auto& x : c) x = -x;
    gens.push_back(c);
  }
  return dual_cone(RationalCone(n, gens));
}

Rational chi_quotient(const ChiQuery& q) {
  check_query(q);
  const std::size_t kernel_rank = q.coords.size() - q.embedding.cols();
  if (kernel_rank == 0) return 1;
  RationalCone region = quotient_region(q);
  if (region.dimension() < kernel_rank) return 0;
  return exponential_integral(region, q.point);
}

namespace {

// One simplicial proposal: z = H_S c >= 0 with independent exponential z_i.
struct Component {
  std::vector<std::vector<double>> h;      // k x k rows H_S
  std::vector<std::vector<double>> h_inv;  // c = h_inv z
  std::vector<double> rate;
  double log_const = 0;  // log(|det H_S| Π rate_i)
};

std::vector<std::vector<double>> to_doubles(const RationalMatrix& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = to_double(m(i, j));
  return out;
}

}  // namespace

McEstimate cone_integral_monte_carlo(const std::vector<IntVector>& halfspaces, const IntegerMatrix& basis,
                                     const RatVector& s, std::uint64_t samples, std::uint64_t seed) {
  const std::size_t n = basis.rows();
  const std::size_t k = basis.cols();
  McEstimate out;
  out.samples = samples;
  if (k == 0) {
    out.value = 1;
    return out;
  }
  // Lattice coordinates c: the exponent is ⟨s', c⟩ with s' = Kᵀ s and the
  // region is {H c >= 0} with rows Kᵀ g.
  RatVector sp(k, Rational(0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) sp[j] += s[i] * Rational(basis(i, j));
  std::vector<RatVector> rows;
  for (const auto& g : halfspaces) {
    RatVector row(k, Rational(0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) row[j] += Rational(g[i] * basis(i, j));
    if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; })) rows.push_back(row);
  }

  // Every k-subset S of independent rows with s' = Σ a_i h_i, a > 0 gives a
  // simplicial cone C_S ⊇ region on which exp(-⟨a, z⟩ / 2) dominates.
  std::vector<Component> comps;
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      RationalMatrix h(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < k; ++j) h(r, j) = rows[idx[r]][j];
      auto h_inv = inverse(h);
      if (!h_inv) return;
      RatVector a = *solve(h.transpose(), sp);
      if (std::any_of(a.begin(), a.end(), [](const Rational& x) { return x <= 0; })) return;
      Component c;
      c.h = to_doubles(h);
      c.h_inv = to_doubles(*h_inv);
      double log_det = 0;
      {
        std::vector<std::vector<double>> m = c.h;
        double ld = 0;
        for (std::size_t col = 0; col < k; ++col) {
          std::size_t piv = col;
          for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
          std::swap(m[piv], m[col]);
          ld += std::log(std::abs(m[col][col]));
          for (std::size_t r = col + 1; r < k; ++r) {
            double f = m[r][col] / m[col][col];
            for (std::size_t j = col; j < k; ++j) m[r][j] -= f * m[col][j];
          }
        }
        log_det = ld;
      }
      c.log_const = log_det;
      for (const auto& x : a) {
        double r = to_double(x) / 2;
        c.rate.push_back(r);
        c.log_const += std::log(r);
      }
      comps.push_back(std::move(c));
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      idx[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  if (comps.empty()) throw PoleError("Monte Carlo oracle: no simplicial proposal contains the evaluation point");

  std::vector<std::vector<double>> hd;
  for (const auto& r : rows) {
    std::vector<double> v;
    for (const auto& x : r) v.push_back(to_double(x));
    hd.push_back(v);
  }
  std::vector<double> spd;
  for (const auto& x : sp) spd.push_back(to_double(x));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, comps.size() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double log_m = std::log(static_cast<double>(comps.size()));
  double mean = 0, m2 = 0;
  std::vector<double> z(k), c(k);
  for (std::uint64_t t = 0; t < samples; ++t) {
    const Component& comp = comps[pick(rng)];
    for (std::size_t i = 0; i < k; ++i) z[i] = -std::log1p(-unif(rng)) / comp.rate[i];
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = 0;
      for (std::size_t j = 0; j < k; ++j) c[i] += comp.h_inv[i][j] * z[j];
    }
    bool inside = true;
    for (const auto& h : hd) {
      double v = 0;
      for (std::size_t j = 0; j < k; ++j) v += h[j] * c[j];
      if (v < -1e-12 * (1 + std::abs(v))) {
        inside = false;
        break;
      }
    }
    double w = 0;
    if (inside) {
      // Mixture density (1/M) Σ_S q_S(c).
      double q = 0;
      for (const auto& other : comps) {
        double e = 0;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
          double zi = 0;
          for (std::size_t j = 0; j < k; ++j) zi += other.h[i][j] * c[j];
          if (zi < -1e-12) ok = false;
          e += other.rate[i] * std::max(zi, 0.0);
        }
        if (ok) q += std::exp(other.log_const - e - log_m);
      }
      double f = 0;
      for (std::size_t j = 0; j < k; ++j) f += spd[j] * c[j];
      w = std::exp(-f) / q;
    }
    double delta = w - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (w - mean);
  }
  out.value = mean;
  out.stderr_ = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples)) : 0;
  return out;
}

McEstimate chi_monte_carlo_oracle(const RationalCone& lambda, const RatVector& s, std::uint64_t samples,
                                  std::uint64_t seed) {
  return cone_integral_monte_carlo(lambda.generators(), IntegerMatrix::identity(lambda.ambient_dim()), s, samples,
                                   seed);
}

McEstimate chi_quotient_monte_carlo(const ChiQuery& q, std::uint64_t samples, std::uint64_t seed) {
  check_query(q);
  const std::size_t n = q.coords.size();
  IntegerMatrix kernel = integer_kernel(q.embedding.transpose());
  std::vector<IntVector> orthant;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    orthant.push_back(e);
  }
  return cone_integral_monte_carlo(orthant, kernel, q.point, samples, seed);
}

}  // namespace torint
