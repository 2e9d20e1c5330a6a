// Analytic Clemens complex of the boundary at the real place, and the
// exponent b of log B.
#pragma once

#include "torint/divisors.hpp"
#include "torint/fan.hpp"

#include <string>
#include <vector>

namespace torint {

struct ClemensComplex {
  std::vector<RaySet> faces;      // nonempty A ⊆ A_D spanning a cone
  std::vector<RaySet> max_faces;  // inclusion-maximal faces; {∅} when D = ∅
  std::vector<RaySet> top_faces;  // faces of maximal cardinality; {∅} when D = ∅
  int dim = -1;                   // max |A| - 1
};

ClemensComplex build_clemens(const ToricPair& pair);

struct ExponentReport {
  int b_pole = 0;
  int b_theorem = 0;
  bool consistent = true;
  std::size_t units_rank_r0 = 0;
  std::vector<std::string> warnings;
};

ExponentReport compute_b(const ToricPair& pair, const PicData& pic, const ClemensComplex& complex);
ExponentReport compute_b(const ToricPair& pair);

}  // namespace torint
