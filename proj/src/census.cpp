#include "torint/census.hpp"

#include "torint/divisors.hpp"
#include "torint/heights.hpp"
#include "torint/primes.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

namespace torint {

std::vector<RatVector> pruning_weights(const ToricPair& pair) {
  const Fan& fan = pair.fan();
  const std::size_t d = fan.dim();
  const std::size_t n = fan.num_rays();
  BigCheck big = check_big(pair);
  if (!big.big) throw InputError("removed", "log-anticanonical not big");
  const IntVector rho = pair.rho();
  std::vector<RatVector> out{big.lambda};
  std::set<RatVector> seen;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    RationalMatrix a(d, d);
    RatVector rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) a(i, j) = Rational(fan.ray(idx[i])[j]);
      rhs[i] = Rational(-rho[idx[i]]);
    }
    if (auto m = solve(a, rhs)) {
      RatVector lambda(n);
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b) {
        lambda[b] = Rational(rho[b]) + dot(*m, fan.ray(b));
        if (lambda[b] < 0) ok = false;
      }
      if (ok && seen.insert(lambda).second) out.push_back(lambda);
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

namespace {

constexpr std::size_t kMaxDepth = 128;

struct Local {
  std::vector<double> F, Frho, W;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
  std::vector<std::uint64_t> bins, cells;
  std::uint64_t nodes = 0, exact_checks = 0;
  std::vector<double> u;
};

class Searcher {
 public:
  Searcher(const ToricPair& pair, const std::vector<Rational>& grid, const MetricSpec& metric,
           std::vector<std::uint64_t> cell_primes)
      : pair_(pair),
        d_(pair.dim()),
        metric_(metric),
        grid_(grid),
        cell_primes_(std::move(cell_primes)),
        exact_(pair.fan(), to_rational(pair.rho()), metric) {
    const Fan& fan = pair.fan();
    const std::size_t n = fan.num_rays();
    for (const auto& b : grid_) log_b_.push_back(std::log(to_double(b)));
    log_bmax_ = log_b_.back();
    tol_ = 1e-9 * (1 + std::abs(log_bmax_));

    auto weights = pruning_weights(pair);
    L_ = weights.size();
    lam_.resize(L_ * n);
    for (std::size_t l = 0; l < L_; ++l)
      for (std::size_t a = 0; a < n; ++a) lam_[l * n + a] = to_double(weights[l][a]);

    build_candidates();
    build_primes();

    // archimedean evaluation of φ̃_ρ
    FanCharts charts(fan);
    const IntVector rho = pair.rho();
    for (std::size_t k = 0; k < fan.maximal_cones().size(); ++k) {
      const auto& cone = fan.maximal_cones()[k];
      std::vector<double> rows(d_ * d_), ell(d_, 0.0);
      for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) {
          rows[i * d_ + j] = charts.inverse_double(k)[i][j];
          ell[j] += to_double(Rational(rho[cone[i]])) * charts.inverse_double(k)[i][j];
        }
      chart_rows_.push_back(std::move(rows));
      chart_ell_.push_back(std::move(ell));
    }
    if (metric_.mode == MetricMode::Smoothed) {
      ArchimedeanMetric arch(fan, metric_);
      for (std::size_t a = 0; a < n; ++a) {
        if (rho[a] == 0) continue;
        std::vector<double> flat;
        for (std::size_t s = 0; s < fan.maximal_cones().size(); ++s)
          for (double x : arch.piece_double(a, s)) flat.push_back(x);
        smooth_pieces_.push_back(std::move(flat));
      }
    }
  }

  CensusResult run(unsigned threads) {
    auto t0 = std::chrono::steady_clock::now();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<Local> locals(threads);
    for (auto& loc : locals) init(loc);

    // identity point
    evaluate(0, locals[0]);
    std::atomic<std::size_t> next{0};
    auto worker = [&](Local& loc) {
      for (;;) {
        std::size_t pi = next.fetch_add(1);
        if (pi >= primes_.size()) break;
        extend(0, pi, pi + 1, loc);
      }
    };
    if (threads == 1) {
      worker(locals[0]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, std::ref(locals[t]));
      for (auto& th : pool) th.join();
    }

    CensusResult out;
    const std::uint64_t signs = std::uint64_t(1) << d_;
    std::uint64_t running = 0;
    bins_.assign(grid_.size(), 0);
    cells_.assign(std::size_t(1) << cell_primes_.size(), 0);
    for (const auto& loc : locals) {
      for (std::size_t i = 0; i < grid_.size(); ++i) bins_[i] += loc.bins[i];
      for (std::size_t c = 0; c < cells_.size(); ++c) cells_[c] += loc.cells[c];
      out.nodes += loc.nodes;
      out.exact_checks += loc.exact_checks;
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      running += bins_[i];
      out.samples.push_back({grid_[i], running * signs});
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

  const std::vector<std::uint64_t>& cells() const { return cells_; }

 private:
  void build_candidates() {
    const Fan& fan = pair_.fan();
    const std::size_t n = fan.num_rays();
    const double tmax = log_bmax_ / std::log(2.0) + 1e-9;
    struct Cand {
      std::vector<long long> v;
      double rho;
      std::vector<double> lam;
    };
    std::vector<Cand> cands;
    const IntVector rho = pair_.rho();
    for (const auto& cone : fan.cones()) {
      if (cone.empty()) continue;
      bool kept = std::all_of(cone.begin(), cone.end(), [&](std::size_t a) { return !pair_.is_removed(a); });
      if (!kept) continue;
      std::vector<long long> c(cone.size(), 1);
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == cone.size()) {
          Cand cd;
          cd.v.assign(d_, 0);
          cd.rho = 0;
          cd.lam.assign(L_, 0.0);
          for (std::size_t r = 0; r < cone.size(); ++r) {
            for (std::size_t j = 0; j < d_; ++j) cd.v[j] += c[r] * to_int64(fan.ray(cone[r])[j]);
            cd.rho += static_cast<double>(c[r]) * to_double(Rational(rho[cone[r]]));
            for (std::size_t l = 0; l < L_; ++l) cd.lam[l] += static_cast<double>(c[r]) * lam_[l * n + cone[r]];
          }
          cands.push_back(std::move(cd));
          return;
        }
        for (c[i] = 1;; ++c[i]) {
          // partial weights with the remaining coefficients at their minimum 1
          bool within = true;
          for (std::size_t l = 0; l < L_ && within; ++l) {
            double w = 0;
            for (std::size_t r = 0; r < cone.size(); ++r)
              w += static_cast<double>(r <= i ? c[r] : 1) * lam_[l * n + cone[r]];
            if (w > tmax) within = false;
          }
          if (!within) break;
          rec(i + 1);
        }
        c[i] = 1;
      };
      rec(0);
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.lam[0] < b.lam[0]; });
    for (const auto& cd : cands) {
      cv_.insert(cv_.end(), cd.v.begin(), cd.v.end());
      crho_.push_back(cd.rho);
      clam_.insert(clam_.end(), cd.lam.begin(), cd.lam.end());
    }
    nc_ = cands.size();
  }

  void build_primes() {
    // q^{λ_α} <= B for every λ, where some ray α of the cone of v has coefficient >= 1
    const std::size_t n = pair_.fan().num_rays();
    double log_pmax = 0;
    for (auto a : pair_.kept()) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l < L_; ++l) {
        double la = lam_[l * n + a];
        if (la > 0) best = std::min(best, (log_bmax_ + tol_) / la);
      }
      log_pmax = std::max(log_pmax, best);
    }
    if (!std::isfinite(log_pmax) || log_pmax > std::log(4e9))
      throw InputError("census", "prime range too large for this bound");
    auto ps = primes_up_to(static_cast<std::uint64_t>(std::exp(log_pmax) * (1 + 1e-12)) + 1);
    for (auto p : ps) {
      if (std::log(double(p)) > log_pmax) break;
      primes_.push_back(p);
      logp_.push_back(std::log(double(p)));
    }
  }

  void init(Local& loc) const {
    loc.F.assign(kMaxDepth * L_, 0.0);
    loc.Frho.assign(kMaxDepth, 0.0);
    loc.W.assign(kMaxDepth * d_, 0.0);
    loc.bins.assign(grid_.size(), 0);
    loc.cells.assign(std::size_t(1) << cell_primes_.size(), 0);
    loc.u.assign(d_, 0.0);
  }

  double arch_phi(const std::vector<double>& u) const {
    if (metric_.mode == MetricMode::Canonical) {
      std::size_t best = 0;
      double best_min = -1e300;
      for (std::size_t k = 0; k < chart_rows_.size(); ++k) {
        double mn = 1e300;
        for (std::size_t i = 0; i < d_; ++i) {
          double s = 0;
          for (std::size_t j = 0; j < d_; ++j) s += chart_rows_[k][i * d_ + j] * u[j];
          mn = std::min(mn, s);
        }
        if (mn > best_min) {
          best_min = mn;
          best = k;
        }
        if (mn >= 0) break;
      }
      double v = 0;
      for (std::size_t j = 0; j < d_; ++j) v += chart_ell_[best][j] * u[j];
      return v;
    }
    const double k = metric_.k;
    double total = 0;
    for (const auto& flat : smooth_pieces_) {
      const std::size_t m = flat.size() / d_;
      double mx = -1e300;
      for (std::size_t s = 0; s < m; ++s) {
        double v = 0;
        for (std::size_t j = 0; j < d_; ++j) v += flat[s * d_ + j] * u[j];
        mx = std::max(mx, k * v);
      }
      double sum = 0;
      for (std::size_t s = 0; s < m; ++s) {
        double v = 0;
        for (std::size_t j = 0; j < d_; ++j) v += flat[s * d_ + j] * u[j];
        sum += std::exp(k * v - mx);
      }
      total += (mx + std::log(sum)) / k;
    }
    return total;
  }

  int exact_compare(const Local& loc, std::size_t depth, const Rational& b) const {
    TorusPoint pt;
    pt.signs.assign(d_, 1);
    for (std::size_t i = 0; i < depth; ++i) {
      auto [pi, j] = loc.stack[i];
      pt.exponents[primes_[pi]] = std::vector<long long>(cv_.begin() + j * d_, cv_.begin() + (j + 1) * d_);
    }
    return compare_height(exact_(pt), b);
  }

  void evaluate(std::size_t depth, Local& loc) const {
    ++loc.nodes;
    for (std::size_t j = 0; j < d_; ++j) loc.u[j] = -loc.W[depth * d_ + j];
    const double log_h = loc.Frho[depth] + arch_phi(loc.u);
    if (log_h > log_bmax_ + tol_) return;
    std::size_t i = static_cast<std::size_t>(std::lower_bound(log_b_.begin(), log_b_.end(), log_h - tol_) -
                                             log_b_.begin());
    for (; i < grid_.size(); ++i) {
      if (log_b_[i] - log_h > tol_) break;
      ++loc.exact_checks;
      if (exact_compare(loc, depth, grid_[i]) <= 0) break;
    }
    if (i == grid_.size()) return;
    ++loc.bins[i];
    std::size_t pattern = 0;
    for (std::size_t c = 0; c < cell_primes_.size(); ++c) {
      bool unit = true;
      for (std::size_t s = 0; s < depth; ++s)
        if (primes_[loc.stack[s].first] == cell_primes_[c]) unit = false;
      if (unit) pattern |= std::size_t(1) << c;
    }
    ++loc.cells[pattern];
  }

  void extend(std::size_t depth, std::size_t from, std::size_t to, Local& loc) const {
    if (depth + 1 >= kMaxDepth) throw ConsistencyError("census: search depth exceeded");
    const double* F = &loc.F[depth * L_];
    const double limit = log_bmax_ + tol_;
    for (std::size_t pi = from; pi < to; ++pi) {
      const double lq = logp_[pi];
      const double budget0 = (limit - F[0]) / lq;
      bool any = false;
      for (std::size_t j = 0; j < nc_; ++j) {
        const double* cl = &clam_[j * L_];
        if (cl[0] > budget0) break;
        bool ok = true;
        for (std::size_t l = 1; l < L_; ++l)
          if (F[l] + cl[l] * lq > limit) {
            ok = false;
            break;
          }
        if (!ok) continue;
        any = true;
        double* Fn = &loc.F[(depth + 1) * L_];
        for (std::size_t l = 0; l < L_; ++l) Fn[l] = F[l] + cl[l] * lq;
        loc.Frho[depth + 1] = loc.Frho[depth] + crho_[j] * lq;
        for (std::size_t k = 0; k < d_; ++k)
          loc.W[(depth + 1) * d_ + k] = loc.W[depth * d_ + k] + static_cast<double>(cv_[j * d_ + k]) * lq;
        if (loc.stack.size() <= depth) loc.stack.resize(depth + 1);
        loc.stack[depth] = {static_cast<std::uint32_t>(pi), static_cast<std::uint32_t>(j)};
        evaluate(depth + 1, loc);
        extend(depth + 1, pi + 1, primes_.size(), loc);
      }
      if (!any) break;
    }
  }

  const ToricPair& pair_;
  std::size_t d_;
  MetricSpec metric_;
  std::vector<Rational> grid_;
  std::vector<double> log_b_;
  double log_bmax_ = 0, tol_ = 0;
  std::vector<std::uint64_t> cell_primes_;
  HeightFunction exact_;
  std::size_t L_ = 0, nc_ = 0;
  std::vector<double> lam_;
  std::vector<long long> cv_;
  std::vector<double> crho_, clam_;
  std::vector<std::uint32_t> primes_;
  std::vector<double> logp_;
  std::vector<std::vector<double>> chart_rows_, chart_ell_;
  std::vector<std::vector<double>> smooth_pieces_;
  std::vector<std::uint64_t> bins_, cells_;
};

}  // namespace

CensusResult census(const ToricPair& pair, std::vector<Rational> grid, const CensusOptions& options) {
  if (grid.empty()) throw InputError("grid", "empty B grid");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  CensusResult out;
  // H >= 1 on integral points, so bounds below 1 count nothing
  std::vector<Rational> positive;
  for (const auto& b : grid)
    if (b >= 1) positive.push_back(b);
  if (positive.empty()) {
    for (const auto& b : grid) out.samples.push_back({b, 0});
    return out;
  }
  Searcher s(pair, positive, options.metric, {});
  CensusResult r = s.run(options.threads);
  for (const auto& b : grid)
    if (b < 1) out.samples.push_back({b, 0});
  for (const auto& smp : r.samples) out.samples.push_back(smp);
  out.nodes = r.nodes;
  out.exact_checks = r.exact_checks;
  out.seconds = r.seconds;
  return out;
}

std::uint64_t enumerate(const ToricPair& pair, const Rational& B, const MetricSpec& metric) {
  CensusOptions opt;
  opt.metric = metric;
  return census(pair, {B}, opt).samples.back().N;
}

std::vector<Rational> log_grid(double lo_exp, double hi_exp, unsigned per_decade) {
  std::vector<Rational> out;
  const int steps = static_cast<int>(std::llround((hi_exp - lo_exp) * per_decade));
  for (int i = 0; i <= steps; ++i) {
    double e = lo_exp + static_cast<double>(i) / per_decade;
    double v = std::round(std::pow(10.0, e));
    out.push_back(Rational(Integer(static_cast<long long>(v))));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LeadingFit fit_leading(const std::vector<CensusSample>& samples, int b) {
  if (b < 1) throw InputError("b", "exponent must be at least 1");
  std::vector<double> L, y;
  for (const auto& s : samples) {
    double B = to_double(s.B);
    if (B <= 1) continue;
    L.push_back(std::log(B));
    y.push_back(static_cast<double>(s.N) / B);
  }
  const std::size_t k = static_cast<std::size_t>(b);
  if (L.size() < 4 || L.size() <= k) throw InputError("grid", "need at least 4 sample points for the fit");
  if (*std::max_element(L.begin(), L.end()) - *std::min_element(L.begin(), L.end()) < std::log(10.0) - 1e-12)
    throw InputError("grid", "sample points must span at least a decade");
  // normal equations in long double; columns (log B)^{b-1}, ..., 1
  std::vector<std::vector<long double>> a(k, std::vector<long double>(k + 1, 0.0L));
  for (std::size_t i = 0; i < L.size(); ++i) {
    std::vector<long double> row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = std::pow(static_cast<long double>(L[i]), static_cast<long double>(k - 1 - c));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) a[r][c] += row[r] * row[c];
      a[r][k] += row[r] * y[i];
    }
  }
  // invert the Gram matrix alongside
  std::vector<std::vector<long double>> inv(k, std::vector<long double>(k, 0.0L));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    long double f = a[c][c];
    if (f == 0) throw InputError("grid", "degenerate grid");
    for (std::size_t j = 0; j <= k; ++j) a[c][j] /= f;
    for (std::size_t j = 0; j < k; ++j) inv[c][j] /= f;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      long double g = a[r][c];
      for (std::size_t j = 0; j <= k; ++j) a[r][j] -= g * a[c][j];
      for (std::size_t j = 0; j < k; ++j) inv[r][j] -= g * inv[c][j];
    }
  }
  LeadingFit fit;
  fit.b = b;
  fit.points = L.size();
  for (std::size_t c = 0; c < k; ++c) fit.coefficients.push_back(static_cast<double>(a[c][k]));
  long double rss = 0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    long double pred = 0;
    for (std::size_t c = 0; c < k; ++c)
      pred += a[c][k] * std::pow(static_cast<long double>(L[i]), static_cast<long double>(k - 1 - c));
    rss += (y[i] - pred) * (y[i] - pred);
  }
  const double dof = static_cast<double>(L.size() - k);
  const double sigma2 = static_cast<double>(rss) / dof;
  fit.residual_rms = std::sqrt(static_cast<double>(rss) / static_cast<double>(L.size()));
  fit.coefficient = fit.coefficients.front();
  fit.stderr_ = std::sqrt(std::max(0.0, sigma2 * static_cast<double>(inv[0][0])));
  double fact = 1;
  for (int i = 2; i < b; ++i) fact *= i;
  fit.theta = fit.coefficient * fact;
  fit.theta_stderr = fit.stderr_ * fact;
  return fit;
}

ExponentSelection select_exponent(const std::vector<CensusSample>& samples, const std::vector<int>& candidates) {
  std::vector<double> x, y;
  for (const auto& s : samples) {
    double B = to_double(s.B);
    if (B < 3 || s.N == 0) continue;
    x.push_back(std::log(std::log(B)));
    y.push_back(std::log(static_cast<double>(s.N) / B));
  }
  if (x.size() < 4) throw InputError("grid", "need at least 4 sample points with N > 0 and B >= 3");
  if (candidates.empty()) throw InputError("b", "no candidate exponents");
  ExponentSelection out;
  double best = std::numeric_limits<double>::infinity();
  for (int b : candidates) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[i] - (b - 1) * x[i];
    double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
    double ss = 0;
    for (double v : r) ss += (v - mean) * (v - mean);
    double rms = std::sqrt(ss / static_cast<double>(r.size()));
    out.residuals.emplace_back(b, rms);
    if (rms < best) {
      best = rms;
      out.best = b;
    }
  }
  return out;
}

Histogram equidistribution_histogram(const ToricPair& pair, const Rational& B, const MetricSpec& metric,
                                     const std::vector<std::uint64_t>& primes) {
  if (B < 1) throw InputError("census", "empty census");
  Searcher s(pair, {B}, metric, primes);
  CensusResult r = s.run(1);
  const std::size_t d = pair.dim();
  Histogram h;
  h.B = B;
  h.primes = primes;
  h.total = r.samples.back().N;
  if (h.total == 0) throw InputError("census", "empty census");
  std::vector<double> unit_mass;
  for (auto p : primes) {
    Integer count = subfan_point_count(pair.fan(), pair.kept_mask(), Integer(p));
    unit_mass.push_back(std::pow(double(p) - 1, double(d)) / to_double(count));
  }
  const std::size_t nsign = std::size_t(1) << d;
  for (std::size_t sg = 0; sg < nsign; ++sg)
    for (std::size_t pat = 0; pat < s.cells().size(); ++pat) {
      HistogramCell c;
      for (std::size_t i = 0; i < d; ++i) c.signs.push_back((sg >> i) & 1 ? -1 : 1);
      double pred = 1.0 / static_cast<double>(nsign);
      for (std::size_t i = 0; i < primes.size(); ++i) {
        bool unit = (pat >> i) & 1;
        c.unit.push_back(unit);
        pred *= unit ? unit_mass[i] : 1 - unit_mass[i];
      }
      c.count = s.cells()[pat];  // every point contributes once to each sign orthant
      c.empirical = static_cast<double>(c.count) / static_cast<double>(h.total);
      c.predicted = pred;
      double sd = std::sqrt(pred * (1 - pred) / static_cast<double>(h.total));
      c.z = sd > 0 ? (c.empirical - pred) / sd : 0;
      h.chi_square += static_cast<double>(h.total) * (c.empirical - pred) * (c.empirical - pred) / pred;
      h.cells.push_back(std::move(c));
    }
  h.dof = h.cells.size() - 1;
  return h;
}

}  // namespace torint
