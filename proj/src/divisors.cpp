#include "torint/divisors.hpp"

#include "torint/feasibility.hpp"

#include <algorithm>

namespace torint {

namespace {

// Rows d..n-1 of the Smith left factor of the ray pairing map Z^n -> Pic(X).
RationalMatrix class_map(const Fan& fan) {
  IntegerMatrix p = ray_pairing(fan);
  auto s = smith_decompose(p);
  const std::size_t n = fan.num_rays();
  RationalMatrix q(n - s.rank, n);
  for (std::size_t i = s.rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i - s.rank, j) = Rational(s.left(i, j));
  return q;
}

}  // namespace

IntegerMatrix ray_pairing(const Fan& fan) {
  IntegerMatrix p(fan.num_rays(), fan.dim());
  for (std::size_t a = 0; a < fan.num_rays(); ++a)
    for (std::size_t j = 0; j < fan.dim(); ++j) p(a, j) = fan.ray(a)[j];
  return p;
}

IntegerMatrix ray_pairing(const Fan& fan, const RaySet& rows) {
  IntegerMatrix p(rows.size(), fan.dim());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t j = 0; j < fan.dim(); ++j) p(a, j) = fan.ray(rows[a])[j];
  return p;
}

RatVector principal_divisor(const Fan& fan, const RatVector& m) {
  RatVector out(fan.num_rays());
  for (std::size_t a = 0; a < fan.num_rays(); ++a) out[a] = dot(m, fan.ray(a));
  return out;
}

BigCheck check_big(const ToricPair& pair) {
  const Fan& fan = pair.fan();
  std::vector<RatVector> normals;
  RatVector bounds;
  IntVector rho = pair.rho();
  for (std::size_t a = 0; a < fan.num_rays(); ++a) {
    normals.push_back(to_rational(fan.ray(a)));
    bounds.emplace_back(-rho[a]);
  }
  BigCheck out;
  auto m = find_interior_point(normals, bounds);
  if (!m) return out;
  out.big = true;
  out.m = *m;
  out.lambda = principal_divisor(fan, *m);
  for (std::size_t a = 0; a < out.lambda.size(); ++a) out.lambda[a] += Rational(rho[a]);
  return out;
}

PicData divisor_sequence(const ToricPair& pair) {
  const Fan& fan = pair.fan();
  const std::size_t d = fan.dim();
  PicData pic;
  auto cx = cokernel_structure(ray_pairing(fan));
  pic.rank_pic_X = cx.rank;
  pic.pic_X_torsion = cx.torsion;

  const RaySet& kept = pair.kept();
  IntegerMatrix pu = ray_pairing(fan, kept);
  std::size_t rank_u = kept.empty() ? 0 : rank(pu);
  pic.units_rank_r0 = d - rank_u;
  if (!kept.empty()) {
    auto cu = cokernel_structure(pu);
    pic.rank_pic_U = cu.rank;
    pic.pic_U_torsion = cu.torsion;
  }
  if (pic.rank_pic_U + d != kept.size() + pic.units_rank_r0)
    throw ConsistencyError("Pic(U) rank identity failed");
  if (!pic.pic_U_torsion.empty()) throw ConsistencyError("Pic(U) has torsion");

  RationalMatrix q = class_map(fan);
  for (std::size_t a = 0; a < fan.num_rays(); ++a) {
    IntVector g(q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) g[i] = numerator(q(i, a));
    pic.effective_generators.push_back(g);
  }
  pic.rho = pair.rho();
  auto big = check_big(pair);
  if (big.big) {
    pic.lambda = big.lambda;
    pic.lambda_m = big.m;
  }
  return pic;
}

RationalCone effective_cone(const ToricPair& pair) {
  RationalMatrix q = class_map(pair.fan());
  std::vector<IntVector> gens;
  for (std::size_t a = 0; a < q.cols(); ++a) {
    IntVector g(q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) g[i] = numerator(q(i, a));
    gens.push_back(g);
  }
  return RationalCone(q.rows(), gens);
}

RatVector divisor_class(const Fan& fan, const RatVector& divisor) { return class_map(fan) * divisor; }

CokernelStructure pic_relative(const ToricPair& pair, const RaySet& a) {
  RaySet rows = pair.kept();
  rows.insert(rows.end(), a.begin(), a.end());
  std::sort(rows.begin(), rows.end());
  if (rows.empty()) return {0, {}};
  return cokernel_structure(ray_pairing(pair.fan(), rows));
}

}  // namespace torint
