// Rational polyhedral cones: duals, triangulations, exponential integrals.
#pragma once

#include "torint/arith.hpp"
#include "torint/errors.hpp"
#include "torint/matrix.hpp"

#include <vector>

namespace torint {

/// Closed cone spanned by primitive integer generators in Z^ambient_dim.
/// Generators are deduplicated and primitive; the zero cone has none.
class RationalCone {
 public:
  RationalCone() = default;
  RationalCone(std::size_t ambient_dim, std::vector<IntVector> generators);
  static RationalCone from_rational(std::size_t ambient_dim, const std::vector<RatVector>& generators);
  static RationalCone orthant(std::size_t n);
  static RationalCone whole_space(std::size_t n);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  std::size_t dimension() const;
  bool is_pointed() const;
  bool is_zero() const { return generators_.empty(); }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<IntVector> generators_;
};

/// {y : ⟨y, g⟩ >= 0 for all generators g}. Lineality is represented by ± pairs.
RationalCone dual_cone(const RationalCone& c);

/// Normals h in span(C) of the facets of a pointed cone C, relative to its span.
std::vector<IntVector> facet_normals(const RationalCone& c);

/// Exact membership: y = Σ a_i g_i with a_i >= 0 (decided over independent
/// generator subsets, without using dual_cone).
bool contains(const RationalCone& c, const RatVector& y);

/// Pulling triangulation of a pointed cone; `apex_order` permutes the order in
/// which generators are pulled (identity when empty). Zero cone -> empty list.
std::vector<RationalCone> triangulate(const RationalCone& c, const std::vector<std::size_t>& apex_order = {});

/// Index of the lattice generated by the given vectors inside the saturated
/// lattice of their span (equals |det| for a basis of a full-rank lattice).
Integer lattice_index(const std::vector<IntVector>& vectors);

/// ∫_C exp(-⟨s, y⟩) dy over a pointed cone, with Lebesgue measure on span(C)
/// normalized by the lattice span(C) ∩ Z^n. Throws PoleError unless ⟨s, g⟩ > 0
/// for every generator.
Rational exponential_integral(const RationalCone& c, const RatVector& s,
                              const std::vector<std::size_t>& apex_order = {});

/// Same integral for irrational evaluation points.
double exponential_integral(const RationalCone& c, const std::vector<double>& s);

/// Characteristic function of a cone: ∫ over the dual cone of exp(-⟨s, y⟩),
/// normalized by the dual lattice. For the orthant this is 1 / Π s_i.
Rational chi_value(const RationalCone& lambda, const RatVector& s);

}  // namespace torint
