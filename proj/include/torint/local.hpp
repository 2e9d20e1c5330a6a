// Local volumes: p-adic densities, the finite Euler product, archimedean
// residue measures and a Monte Carlo tube oracle.
#pragma once

#include "torint/fan.hpp"
#include "torint/metric.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace torint {

struct LocalDensity {
  std::uint64_t p = 0;
  RatVector s;                     // over A_U, in pair.kept() order
  std::optional<Rational> value;   // Ĥ_p(1; s), exact when s is integral
  double value_double = 0;
  std::optional<Rational> density; // (1 - 1/p)^d · Ĥ_p(1; s)
  double density_double = 0;
};

/// Local Fourier transform of H_p^{-s} at the trivial character over the
/// 𝒰(Z_p)-integral points. `s` is indexed by pair.kept() (or by all rays, in
/// which case removed entries are ignored). Throws std::invalid_argument for
/// non-prime p and PoleError when some s_α <= 0.
LocalDensity denef_local(const ToricPair& pair, std::uint64_t p, const RatVector& s);

/// s = ρ restricted to A_U.
RatVector rho_on_kept(const ToricPair& pair);

/// Residue-class count in the Cox model: tuples z ∈ (Z/p^k)^n whose set
/// {α : p | z_α} spans a cone of Σ_U, divided by φ(p^k)^{n-d} p^{kd}.
Rational residue_class_density(const ToricPair& pair, std::uint64_t p, unsigned k);

/// #𝒰(F_p)/p^d · (1 - 1/p)^{|A_U| - d}, computed from the orbit counts.
Rational euler_factor(const ToricPair& pair, std::uint64_t p);

/// Number of subsets of A_U that span no cone; |p²(factor - 1)| <= this.
std::size_t euler_second_order_constant(const ToricPair& pair);

struct EulerProductResult {
  double value = 0;
  std::uint64_t prime_bound = 0;
  double tail_bound = 0;   // bound on |log| of the omitted tail
  double lower = 0, upper = 0;
  std::size_t constant = 0;
  std::vector<std::pair<std::uint64_t, double>> factors;  // (p, log factor) when requested
};

EulerProductResult finite_tamagawa(const ToricPair& pair, std::uint64_t prime_bound = 1000000,
                                   bool keep_factors = false);

struct QuadratureSpec {
  double rel_tol = 1e-9;
  unsigned max_depth = 15;
};

struct ResidueMeasureResult {
  RaySet face;
  double value = 0;
  double est_error = 0;
  MetricSpec metric;
  std::size_t star_cones = 0;
};

/// τ_A(D_A(R)) = 2^d ∫ over the star fan of A of exp(-Σ_{β∉A} ψ_β), where ψ_β
/// is the limit of φ̃_β along the tube around D_A. Throws ConvergenceError
/// when the adaptive quadrature misses its tolerance.
ResidueMeasureResult residue_measure(const ToricPair& pair, const RaySet& face, const MetricSpec& metric,
                                     const QuadratureSpec& quad = {});

struct TubeEstimate {
  double epsilon = 0;
  double value = 0;
  double stderr_ = 0;
  std::size_t samples = 0;
};

struct TubeOracleResult {
  std::vector<TubeEstimate> estimates;
  TubeEstimate limit;  // the smallest ε
};

/// μ'_∞({x : ‖f_α(x)‖ < ε for α ∈ A}) / ε^{|A|} by importance sampling.
TubeOracleResult tube_oracle(const ToricPair& pair, const RaySet& face, const MetricSpec& metric,
                             const std::vector<double>& epsilons, std::size_t samples, std::uint64_t seed);

}  // namespace torint
