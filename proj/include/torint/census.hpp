// Complete enumeration of integral points of bounded height, fitting of the
// counting function and equidistribution histograms.
#pragma once

#include "torint/fan.hpp"
#include "torint/metric.hpp"

#include <cstdint>
#include <vector>

namespace torint {

/// Weights λ = ρ + div(χ_m) used to bound the height from below: the interior
/// point found by the bigness check first, then the vertices of
/// P_ρ = {m : ρ_α + ⟨m, n_α⟩ >= 0}.
std::vector<RatVector> pruning_weights(const ToricPair& pair);

struct CensusOptions {
  MetricSpec metric;
  unsigned threads = 1;  // 0: hardware concurrency
};

struct CensusSample {
  Rational B;
  std::uint64_t N = 0;
};

struct CensusResult {
  std::vector<CensusSample> samples;  // sorted by B
  std::uint64_t nodes = 0;            // search nodes visited
  std::uint64_t exact_checks = 0;     // near-boundary points decided exactly
  double seconds = 0;
};

/// N(B) for every B of the grid, from one search at max(grid).
CensusResult census(const ToricPair& pair, std::vector<Rational> grid, const CensusOptions& options = {});

/// N(B) = #{x ∈ T(Q) ∩ 𝒰(Z) : H(x) <= B}.
std::uint64_t enumerate(const ToricPair& pair, const Rational& B, const MetricSpec& metric = {});

/// 10^lo, ..., 10^hi with `per_decade` points per decade.
std::vector<Rational> log_grid(double lo_exp, double hi_exp, unsigned per_decade);

struct LeadingFit {
  int b = 1;
  std::vector<double> coefficients;  // of (log B)^{b-1}, ..., 1
  double coefficient = 0;            // leading one
  double stderr_ = 0;
  double theta = 0;                  // coefficient · (b - 1)!
  double theta_stderr = 0;
  double residual_rms = 0;
  std::size_t points = 0;
};

/// Least squares of N(B)/B against a polynomial of degree b - 1 in log B.
/// Throws InputError on fewer than 4 usable points or a grid spanning less
/// than a decade.
LeadingFit fit_leading(const std::vector<CensusSample>& samples, int b);

struct ExponentSelection {
  int best = 1;
  std::vector<std::pair<int, double>> residuals;  // (b', rms)
};

/// For each candidate b', fits log(N/B) = (b' - 1) log log B + c and keeps the
/// candidate with the smallest residual.
ExponentSelection select_exponent(const std::vector<CensusSample>& samples, const std::vector<int>& candidates);

struct HistogramCell {
  std::vector<int> signs;
  std::vector<bool> unit;  // unit at each listed prime
  std::uint64_t count = 0;
  double empirical = 0;
  double predicted = 0;
  double z = 0;
};

struct Histogram {
  Rational B;
  std::vector<std::uint64_t> primes;
  std::uint64_t total = 0;
  std::vector<HistogramCell> cells;
  double chi_square = 0;
  std::size_t dof = 0;
};

/// Cells: sign orthant × (unit or not) at each prime. The prediction is the
/// product of uniform sign masses and the local unit masses (p-1)^d / #𝒰(F_p).
Histogram equidistribution_histogram(const ToricPair& pair, const Rational& B, const MetricSpec& metric,
                                     const std::vector<std::uint64_t>& primes);

}  // namespace torint
