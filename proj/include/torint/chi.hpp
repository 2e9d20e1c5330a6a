// Characteristic functions of cones and their quotient versions.
#pragma once

#include "torint/cone.hpp"
#include "torint/fan.hpp"

#include <cstdint>

namespace torint {

/// Data for X_{Λ'_A}(π(λ̃)): V_A = Z^{coords} with coords = A_U ∪ A, the
/// embedding of M given by m -> (⟨m, n_α⟩)_{α ∈ coords}, and the point λ̃.
struct ChiQuery {
  RaySet coords;
  IntegerMatrix embedding;  // |coords| x d
  RatVector point;          // λ̃ over coords
};

ChiQuery make_chi_query(const ToricPair& pair, const RaySet& face, const RatVector& lambda);

/// {y >= 0 in R^{coords} : Σ y_α n_α = 0}, the region integrated by chi_quotient.
RationalCone quotient_region(const ChiQuery& q);

/// Exact value of X_{Λ'_A}(π(λ̃)) with the measure dual to Pic(U; A).
Rational chi_quotient(const ChiQuery& q);

struct McEstimate {
  double value = 0;
  double stderr_ = 0;
  std::uint64_t samples = 0;
};

/// Importance-sampled ∫ exp(-⟨s, K c⟩) dc over {c : ⟨g_i, K c⟩ >= 0 for all i},
/// where the columns of K are a lattice basis. Deterministic for a seed.
McEstimate cone_integral_monte_carlo(const std::vector<IntVector>& halfspaces, const IntegerMatrix& basis,
                                     const RatVector& s, std::uint64_t samples, std::uint64_t seed);

/// Oracle for chi_value: integrates over the dual of Λ using only Λ's generators.
McEstimate chi_monte_carlo_oracle(const RationalCone& lambda, const RatVector& s, std::uint64_t samples,
                                  std::uint64_t seed);

/// Oracle for chi_quotient.
McEstimate chi_quotient_monte_carlo(const ChiQuery& q, std::uint64_t samples, std::uint64_t seed);

}  // namespace torint
