#include "torint/clemens.hpp"

#include <algorithm>

namespace torint {

ClemensComplex build_clemens(const ToricPair& pair) {
  ClemensComplex cc;
  const Fan& fan = pair.fan();
  for (const auto& c : fan.cones()) {
    if (c.empty()) continue;
    if (std::all_of(c.begin(), c.end(), [&](std::size_t a) { return pair.is_removed(a); })) cc.faces.push_back(c);
  }
  if (cc.faces.empty()) {
    cc.max_faces = {RaySet{}};
    cc.top_faces = {RaySet{}};
    cc.dim = -1;
    return cc;
  }
  std::size_t top = 0;
  for (const auto& f : cc.faces) top = std::max(top, f.size());
  cc.dim = static_cast<int>(top) - 1;
  for (const auto& f : cc.faces) {
    if (f.size() == top) cc.top_faces.push_back(f);
    bool maximal = true;
    for (const auto& g : cc.faces)
      if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        maximal = false;
        break;
      }
    if (maximal) cc.max_faces.push_back(f);
  }
  return cc;
}

ExponentReport compute_b(const ToricPair& pair, const PicData& pic, const ClemensComplex& complex) {
  ExponentReport r;
  const int arch = complex.dim + 1;
  r.b_pole = static_cast<int>(pair.kept().size()) + arch - static_cast<int>(pair.dim());
  r.b_theorem = static_cast<int>(pic.rank_pic_U) + arch;
  r.units_rank_r0 = pic.units_rank_r0;
  r.consistent = r.b_pole == r.b_theorem;
  if (!r.consistent)
    r.warnings.push_back("pole-order exponent b_pole = " + std::to_string(r.b_pole) +
                         " differs from rank-Pic(U) exponent b_theorem = " + std::to_string(r.b_theorem) +
                         " (U has " + std::to_string(r.units_rank_r0) +
                         " independent nonconstant units); predictions use b_pole");
  if (complex.max_faces.size() != complex.top_faces.size())
    r.warnings.push_back("Clemens complex is not pure; only faces of maximal dimension contribute");
  return r;
}

ExponentReport compute_b(const ToricPair& pair) {
  return compute_b(pair, divisor_sequence(pair), build_clemens(pair));
}

}  // namespace torint
