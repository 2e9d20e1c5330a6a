// Divisor class groups of X and U = X \ D, bigness of -(K_X + D).
#pragma once

#include "torint/cone.hpp"
#include "torint/fan.hpp"

namespace torint {

struct PicData {
  std::size_t rank_pic_X = 0;
  std::size_t rank_pic_U = 0;
  std::size_t units_rank_r0 = 0;  // rank of the invertible functions on U modulo constants
  std::vector<Integer> pic_X_torsion;
  std::vector<Integer> pic_U_torsion;
  std::vector<IntVector> effective_generators;  // class of each D_α in Pic(X) ≅ Z^{rank_pic_X}
  IntVector rho;
  RatVector lambda;    // ρ + div(χ_m), strictly positive
  RatVector lambda_m;  // the m used for lambda
};

/// n x d matrix with rows n_α, i.e. m -> (⟨m, n_α⟩)_α.
IntegerMatrix ray_pairing(const Fan& fan);

/// Rows α of ray_pairing restricted to `rows`.
IntegerMatrix ray_pairing(const Fan& fan, const RaySet& rows);

/// div(χ_m) = (⟨m, n_α⟩)_α.
RatVector principal_divisor(const Fan& fan, const RatVector& m);

struct BigCheck {
  bool big = false;
  RatVector m;
  RatVector lambda;
};

/// Searches m with ρ_α + ⟨m, n_α⟩ > 0 for all α.
BigCheck check_big(const ToricPair& pair);

/// Throws ConsistencyError if Pic(U) has torsion.
PicData divisor_sequence(const ToricPair& pair);

/// Image of the nonnegative orthant in Pic(X)_R.
RationalCone effective_cone(const ToricPair& pair);

/// Class of a divisor vector in Pic(X) coordinates.
RatVector divisor_class(const Fan& fan, const RatVector& divisor);

/// Cokernel of M -> Z^{A_U ∪ A} (Pic(U; A)).
CokernelStructure pic_relative(const ToricPair& pair, const RaySet& a);

}  // namespace torint
