// Smooth complete fans, toric pairs (X, D) and finite-field strata counts.
#pragma once

#include "torint/arith.hpp"
#include "torint/errors.hpp"
#include "torint/matrix.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace torint {

/// Sorted list of ray indices.
using RaySet = std::vector<std::size_t>;

class Fan {
 public:
  Fan() = default;
  /// `cones` may list any generating family; all faces are added. Throws
  /// InputError on syntactic problems (dimension mismatch, bad indices,
  /// non-primitive or repeated rays).
  Fan(std::size_t dim, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
      std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Every cone, the zero cone first, ordered by size then lexicographically.
  const std::vector<RaySet>& cones() const { return cones_; }
  const std::vector<RaySet>& maximal_cones() const { return maximal_; }
  bool is_cone(const RaySet& a) const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<std::string> labels_;
  std::vector<RaySet> cones_;
  std::vector<RaySet> maximal_;
  std::set<RaySet> cone_set_;
};

struct FanDiagnostics {
  bool smooth = false;
  bool complete = false;
  std::vector<std::string> messages;
};

FanDiagnostics validate(const Fan& fan);

/// The cone with ray set exactly `a` (sorted), or nullopt.
std::optional<RaySet> cone_of_rayset(const Fan& fan, RaySet a);

/// #D_A°(F_q): (q-1)^{d-|A|} when A spans a cone, else 0. Throws for q < 2.
Integer stratum_point_count(const Fan& fan, const RaySet& a, const Integer& q);

/// Σ_σ (q-1)^{d - dim σ} over the cones of the fan.
Integer variety_point_count(const Fan& fan, const Integer& q);

/// Same sum restricted to cones whose rays all satisfy allowed[α].
Integer subfan_point_count(const Fan& fan, const std::vector<bool>& allowed, const Integer& q);

/// Unimodular d x d matrix whose first |A| columns are the rays of A (A must
/// span a smooth cone).
IntegerMatrix unimodular_completion(const Fan& fan, const RaySet& a);

struct StarFan {
  Fan fan;                                // in N / Z σ_A
  std::vector<std::size_t> original_ray;  // star ray index -> ray index of the parent fan
  IntegerMatrix projection;               // (d - |A|) x d, N -> N / Z σ_A
};

/// Fan of the stratum V(σ_A) in the quotient lattice. Throws InputError when
/// A spans no cone.
StarFan star_fan(const Fan& fan, const RaySet& a);

/// Per-cone inverse ray matrices of a smooth complete fan; evaluates the
/// piecewise-linear coordinates v = Σ_α a_α n_α with support a cone.
class FanCharts {
 public:
  explicit FanCharts(const Fan& fan);

  /// Coefficients a_α (length num_rays) of v in the cone containing it.
  RatVector coordinates(const RatVector& v) const;
  std::vector<double> coordinates(const std::vector<double>& v) const;
  /// Index into fan.maximal_cones() of a cone containing v.
  std::size_t locate(const RatVector& v) const;

  const Fan& fan() const { return fan_; }
  /// Row i of inverse(k) is the linear form giving the coefficient of ray
  /// maximal_cones()[k][i] on that cone.
  const RationalMatrix& inverse(std::size_t k) const { return inverse_[k]; }
  const std::vector<std::vector<double>>& inverse_double(std::size_t k) const { return inverse_double_[k]; }

 private:
  Fan fan_;
  std::vector<RationalMatrix> inverse_;
  std::vector<std::vector<std::vector<double>>> inverse_double_;
};

/// Toric pair (X, D): a fan together with the removed rays A_D.
class ToricPair {
 public:
  ToricPair() = default;
  ToricPair(Fan fan, RaySet removed, std::string name = {});

  const Fan& fan() const { return fan_; }
  const std::string& name() const { return name_; }
  std::size_t dim() const { return fan_.dim(); }
  const RaySet& removed() const { return removed_; }
  const RaySet& kept() const { return kept_; }
  bool is_removed(std::size_t alpha) const { return removed_mask_[alpha]; }
  const std::vector<bool>& kept_mask() const { return kept_mask_; }
  /// ρ_α = 1 on A_U, 0 on A_D.
  IntVector rho() const;
  /// v lies in the support of Σ_U (cones with all rays kept).
  bool in_kept_support(const FanCharts& charts, const RatVector& v) const;

 private:
  Fan fan_;
  std::string name_;
  RaySet removed_, kept_;
  std::vector<bool> removed_mask_, kept_mask_;
};

}  // namespace torint
