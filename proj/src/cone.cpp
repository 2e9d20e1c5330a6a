#include "torint/cone.hpp"

#include "torint/feasibility.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace torint {

namespace {

IntegerMatrix columns_matrix(std::size_t n, const std::vector<IntVector>& cols) {
  IntegerMatrix m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  return m;
}

IntegerMatrix rows_matrix(std::size_t n, const std::vector<IntVector>& rows) {
  IntegerMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

void for_each_subset(std::size_t m, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  if (r > m) return;
  for (;;) {
    f(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == m - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Coordinates of each vector with respect to a basis of the saturated span.
struct SpanCoordinates {
  IntegerMatrix basis;              // n x k
  std::vector<IntVector> coords;    // one length-k vector per input
};

SpanCoordinates span_coordinates(std::size_t n, const std::vector<IntVector>& vectors) {
  SpanCoordinates out;
  out.basis = saturated_column_span(columns_matrix(n, vectors));
  RationalMatrix b = to_rational(out.basis);
  for (const auto& v : vectors) {
    auto c = solve(b, to_rational(v));
    IntVector ci;
    for (const auto& x : *c) ci.push_back(numerator(x));
    out.coords.push_back(std::move(ci));
  }
  return out;
}

// Extreme rays of {y in span(C) : ⟨g, y⟩ >= 0 for all generators g}. For a
// pointed C these are the inner facet normals.
std::vector<IntVector> pointed_dual_part(std::size_t n, const std::vector<IntVector>& gens) {
  std::vector<IntVector> rays;
  if (gens.empty()) return rays;
  IntegerMatrix basis = saturated_column_span(columns_matrix(n, gens));
  const std::size_t k = basis.cols();
  // q(i, j) = ⟨g_i, basis_j⟩
  IntegerMatrix q = rows_matrix(n, gens) * basis;
  std::set<IntVector> seen;
  for_each_subset(gens.size(), k - 1, [&](const std::vector<std::size_t>& subset) {
    IntegerMatrix sub(subset.size(), k);
    for (std::size_t r = 0; r < subset.size(); ++r)
      for (std::size_t j = 0; j < k; ++j) sub(r, j) = q(subset[r], j);
    IntegerMatrix ker = subset.empty() ? IntegerMatrix::identity(k) : integer_kernel(sub);
    if (ker.cols() != 1) return;
    IntVector c = ker.col(0);
    IntVector y = basis * c;
    bool pos = true, neg = true;
    for (const auto& g : gens) {
      Integer v = dot(g, y);
      if (v < 0) pos = false;
      if (v > 0) neg = false;
    }
    if (!pos && !neg) return;
    if (!pos)
      for (auto& x : y) x = -x;
    y = primitive(y);
    if (seen.insert(y).second) rays.push_back(y);
  });
  return rays;
}

void pulling(const std::vector<IntVector>& gens, std::size_t n, const std::vector<std::size_t>& face,
             std::vector<std::vector<std::size_t>>& out) {
  std::vector<IntVector> fg;
  for (auto i : face) fg.push_back(gens[i]);
  const std::size_t k = rank(columns_matrix(n, fg));
  if (face.size() == k) {
    out.push_back(face);
    return;
  }
  const std::size_t apex = face.front();
  for (const auto& h : pointed_dual_part(n, fg)) {
    std::vector<std::size_t> facet;
    for (auto i : face)
      if (dot(h, gens[i]) == 0) facet.push_back(i);
    if (std::find(facet.begin(), facet.end(), apex) != facet.end()) continue;
    std::vector<std::vector<std::size_t>> sub;
    pulling(gens, n, facet, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

RationalCone::RationalCone(std::size_t ambient_dim, std::vector<IntVector> generators) : ambient_dim_(ambient_dim) {
  std::set<IntVector> seen;
  for (auto& g : generators) {
    if (g.size() != ambient_dim) throw std::invalid_argument("generator dimension mismatch");
    IntVector p = primitive(g);
    if (content(p) == 0) continue;
    if (seen.insert(p).second) generators_.push_back(std::move(p));
  }
}

RationalCone RationalCone::from_rational(std::size_t ambient_dim, const std::vector<RatVector>& generators) {
  std::vector<IntVector> gens;
  for (const auto& g : generators) gens.push_back(primitive_from_rational(g));
  return RationalCone(ambient_dim, std::move(gens));
}

RationalCone RationalCone::orthant(std::size_t n) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    gens.push_back(e);
  }
  return RationalCone(n, gens);
}

RationalCone RationalCone::whole_space(std::size_t n) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    gens.push_back(e);
    e[i] = -1;
    gens.push_back(e);
  }
  return RationalCone(n, gens);
}

std::size_t RationalCone::dimension() const {
  if (generators_.empty()) return 0;
  return rank(columns_matrix(ambient_dim_, generators_));
}

bool RationalCone::is_pointed() const {
  if (generators_.empty()) return true;
  std::vector<RatVector> normals;
  RatVector bounds;
  for (const auto& g : generators_) {
    normals.push_back(to_rational(g));
    bounds.emplace_back(0);
  }
  return find_interior_point(normals, bounds).has_value();
}

RationalCone dual_cone(const RationalCone& c) {
  const std::size_t n = c.ambient_dim();
  if (c.is_zero()) return RationalCone::whole_space(n);
  std::vector<IntVector> gens = pointed_dual_part(n, c.generators());
  IntegerMatrix lineality = integer_kernel(rows_matrix(n, c.generators()));
  for (std::size_t j = 0; j < lineality.cols(); ++j) {
    IntVector v = lineality.col(j);
    gens.push_back(v);
    for (auto& x : v) x = -x;
    gens.push_back(v);
  }
  return RationalCone(n, std::move(gens));
}

std::vector<IntVector> facet_normals(const RationalCone& c) {
  return pointed_dual_part(c.ambient_dim(), c.generators());
}

bool contains(const RationalCone& c, const RatVector& y) {
  const std::size_t n = c.ambient_dim();
  const auto& gens = c.generators();
  bool zero = std::all_of(y.begin(), y.end(), [](const Rational& v) { return v == 0; });
  if (zero) return true;
  if (gens.empty()) return false;
  // Caratheodory: y lies in the cone iff it is a nonnegative combination of
  // some linearly independent subset of size rank(C).
  const std::size_t k = rank(columns_matrix(n, gens));
  bool found = false;
  for_each_subset(gens.size(), k, [&](const std::vector<std::size_t>& subset) {
    if (found) return;
    RationalMatrix a(n, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) a(i, j) = Rational(gens[subset[j]][i]);
    auto x = solve(a, y);
    if (!x) return;
    found = std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; });
  });
  return found;
}

std::vector<RationalCone> triangulate(const RationalCone& c, const std::vector<std::size_t>& apex_order) {
  if (c.is_zero()) return {};
  if (!c.is_pointed()) throw std::invalid_argument("triangulate: cone is not pointed");
  const auto& g0 = c.generators();
  std::vector<IntVector> gens;
  if (apex_order.empty()) {
    gens = g0;
  } else {
    for (auto i : apex_order) gens.push_back(g0.at(i));
  }
  std::vector<std::size_t> all(gens.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<std::size_t>> simplices;
  pulling(gens, c.ambient_dim(), all, simplices);
  std::vector<RationalCone> pieces;
  for (const auto& s : simplices) {
    std::vector<IntVector> pg;
    for (auto i : s) pg.push_back(gens[i]);
    pieces.emplace_back(c.ambient_dim(), std::move(pg));
  }
  return pieces;
}

Integer lattice_index(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 1;
  const std::size_t n = vectors.front().size();
  SpanCoordinates sc = span_coordinates(n, vectors);
  const std::size_t k = sc.basis.cols();
  if (k != vectors.size()) return 0;
  IntegerMatrix m(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) m(i, j) = sc.coords[j][i];
  return abs(determinant(m));
}

Rational exponential_integral(const RationalCone& c, const RatVector& s,
                              const std::vector<std::size_t>& apex_order) {
  if (c.is_zero()) return 1;
  for (const auto& g : c.generators())
    if (dot(s, g) <= 0) throw PoleError("exponential integral diverges: ⟨s, g⟩ <= 0 for a generator");
  const std::size_t n = c.ambient_dim();
  IntegerMatrix basis = saturated_column_span(columns_matrix(n, c.generators()));
  RationalMatrix b = to_rational(basis);
  const std::size_t k = basis.cols();
  Rational total = 0;
  for (const auto& piece : triangulate(c, apex_order)) {
    IntegerMatrix coords(k, k);
    Rational denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& g = piece.generators()[j];
      auto x = solve(b, to_rational(g));
      for (std::size_t i = 0; i < k; ++i) coords(i, j) = numerator((*x)[i]);
      denom *= dot(s, g);
    }
    total += Rational(abs(determinant(coords))) / denom;
  }
  return total;
}

double exponential_integral(const RationalCone& c, const std::vector<double>& s) {
  if (c.is_zero()) return 1.0;
  const std::size_t n = c.ambient_dim();
  IntegerMatrix basis = saturated_column_span(columns_matrix(n, c.generators()));
  RationalMatrix b = to_rational(basis);
  const std::size_t k = basis.cols();
  double total = 0;
  for (const auto& piece : triangulate(c)) {
    IntegerMatrix coords(k, k);
    double denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& g = piece.generators()[j];
      auto x = solve(b, to_rational(g));
      for (std::size_t i = 0; i < k; ++i) coords(i, j) = numerator((*x)[i]);
      double sg = 0;
      for (std::size_t i = 0; i < n; ++i) sg += s[i] * to_double(g[i]);
      if (sg <= 0) throw PoleError("exponential integral diverges: ⟨s, g⟩ <= 0 for a generator");
      denom *= sg;
    }
    total += to_double(abs(determinant(coords))) / denom;
  }
  return total;
}

Rational chi_value(const RationalCone& lambda, const RatVector& s) {
  RationalCone region = dual_cone(lambda);
  if (!region.is_pointed()) throw PoleError("characteristic function undefined: cone is not full-dimensional");
  return exponential_integral(region, s);
}

}  // namespace torint
