// Exact feasibility of small linear systems by Fourier–Motzkin elimination.
#pragma once

#include "torint/arith.hpp"

#include <optional>
#include <vector>

namespace torint {

enum class Relation { Greater, GreaterEqual, Equal };

/// coeffs · x  (relation)  bound
struct LinearConstraint {
  RatVector coeffs;
  Rational bound;
  Relation relation = Relation::Greater;
};

/// A point satisfying every constraint exactly, or nullopt when the system is
/// infeasible. Deterministic: variables are fixed from the last eliminated one
/// backwards, preferring 0, then interval midpoints.
std::optional<RatVector> find_feasible_point(const std::vector<LinearConstraint>& system,
                                             std::size_t num_vars);

/// Convenience wrapper for purely strict systems ⟨a_i, x⟩ > b_i.
std::optional<RatVector> find_interior_point(const std::vector<RatVector>& normals,
                                             const RatVector& bounds);

}  // namespace torint
