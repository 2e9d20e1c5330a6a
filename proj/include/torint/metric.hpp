// Archimedean metrics on the boundary line bundles O(D_α).
#pragma once

#include "torint/fan.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace torint {

enum class MetricMode { Canonical, Smoothed };

struct MetricSpec {
  MetricMode mode = MetricMode::Canonical;
  double k = 8.0;  // smoothing parameter
};

/// "canonical" or "smoothed:<k>".
std::string describe(const MetricSpec& m);
MetricSpec parse_metric(const std::string& text);

/// φ_α is convex on N_R (every linear piece lies below φ_α at every ray).
bool pl_is_convex(const Fan& fan, std::size_t alpha);

/// -log ‖f_α‖_∞ as a function of u = -log|x| ∈ R^d. CANONICAL uses the
/// piecewise-linear φ_α; SMOOTHED(k) uses (1/k) log Σ_σ exp(k ℓ_{α,σ}(u)) over
/// the maximal cones σ, where ℓ_{α,σ} is the linear piece of φ_α on σ.
class ArchimedeanMetric {
 public:
  ArchimedeanMetric(const Fan& fan, MetricSpec spec);

  const MetricSpec& spec() const { return spec_; }
  const Fan& fan() const { return charts_.fan(); }
  const FanCharts& charts() const { return charts_; }

  /// Linear piece ℓ_{α,σ} (σ indexes fan.maximal_cones()).
  const RatVector& piece(std::size_t alpha, std::size_t sigma) const { return pieces_[alpha][sigma]; }
  const std::vector<double>& piece_double(std::size_t alpha, std::size_t sigma) const {
    return pieces_double_[alpha][sigma];
  }

  double phi(std::size_t alpha, const std::vector<double>& u) const;
  /// All φ̃_α(u) at once.
  std::vector<double> phis(const std::vector<double>& u) const;
  /// Σ_α s_α φ̃_α(u).
  double phi_s(const std::vector<double>& s, const std::vector<double>& u) const;

  /// Smoothed value in an arbitrary floating type (used for tie re-checks).
  template <typename Real>
  Real smoothed_phi(std::size_t alpha, const std::vector<Real>& u) const {
    using std::exp;
    using std::log;
    const std::size_t nc = pieces_[alpha].size();
    std::vector<Real> vals(nc);
    Real mx = 0;
    for (std::size_t s = 0; s < nc; ++s) {
      Real v = 0;
      for (std::size_t j = 0; j < u.size(); ++j) v += Real(pieces_[alpha][s][j]) * u[j];
      vals[s] = v * Real(spec_.k);
      if (s == 0 || vals[s] > mx) mx = vals[s];
    }
    Real sum = 0;
    for (const auto& v : vals) sum += exp(v - mx);
    return (mx + log(sum)) / Real(spec_.k);
  }

 private:
  MetricSpec spec_;
  FanCharts charts_;
  std::vector<std::vector<RatVector>> pieces_;
  std::vector<std::vector<std::vector<double>>> pieces_double_;
};

}  // namespace torint
