#include "torint/feasibility.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace torint {

namespace {

struct Row {
  RatVector a;
  Rational b;
  bool strict;
};

// Scale so that the first nonzero coefficient has absolute value 1; makes
// duplicate detection cheap.
Row normalize(Row r) {
  for (const auto& c : r.a) {
    if (c == 0) continue;
    Rational s = abs(c);
    for (auto& x : r.a) x /= s;
    r.b /= s;
    break;
  }
  return r;
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

void dedupe(std::vector<Row>& rows) {
  std::vector<Row> out;
  for (auto& r : rows) {
    bool dominated = false;
    for (auto& o : out) {
      if (o.a != r.a) continue;
      // same normal: keep the tighter constraint
      if (r.b > o.b || (r.b == o.b && r.strict && !o.strict)) o = r;
      dominated = true;
      break;
    }
    if (!dominated) out.push_back(std::move(r));
  }
  rows = std::move(out);
}

Rational pick_value(const std::optional<std::pair<Rational, bool>>& lo,
                    const std::optional<std::pair<Rational, bool>>& hi) {
  auto admits = [&](const Rational& v) {
    if (lo && (lo->second ? !(v > lo->first) : !(v >= lo->first))) return false;
    if (hi && (hi->second ? !(v < hi->first) : !(v <= hi->first))) return false;
    return true;
  };
  if (admits(Rational(0))) return 0;
  if (lo && hi) {
    if (lo->first == hi->first) return lo->first;
    return (lo->first + hi->first) / 2;
  }
  if (lo) {
    Integer f = numerator(lo->first) / denominator(lo->first);
    Rational v(f);
    while (!admits(v)) v += 1;
    return v;
  }
  Integer f = numerator(hi->first) / denominator(hi->first);
  Rational v(f);
  while (!admits(v)) v -= 1;
  return v;
}

}  // namespace

std::optional<RatVector> find_feasible_point(const std::vector<LinearConstraint>& system,
                                             std::size_t num_vars) {
  std::vector<Row> rows;
  for (const auto& c : system) {
    if (c.coeffs.size() != num_vars) throw std::invalid_argument("constraint dimension mismatch");
    if (c.relation == Relation::Equal) {
      rows.push_back(normalize({c.coeffs, c.bound, false}));
      RatVector neg = c.coeffs;
      for (auto& x : neg) x = -x;
      rows.push_back(normalize({neg, -c.bound, false}));
    } else {
      rows.push_back(normalize({c.coeffs, c.bound, c.relation == Relation::Greater}));
    }
  }
  dedupe(rows);

  // stages[k] holds the system in which variables 0..k-1 have been eliminated.
  std::vector<std::vector<Row>> stages;
  stages.push_back(rows);
  for (std::size_t var = 0; var < num_vars; ++var) {
    const auto& cur = stages.back();
    std::vector<Row> lower, upper, next;
    for (const auto& r : cur) {
      if (r.a[var] > 0)
        lower.push_back(r);
      else if (r.a[var] < 0)
        upper.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto& l : lower)
      for (const auto& u : upper) {
        // l: a_l x > b_l with a_l[var] > 0; u: a_u x > b_u with a_u[var] < 0.
        Rational wl = -u.a[var];
        Rational wu = l.a[var];
        Row comb;
        comb.a.resize(num_vars);
        for (std::size_t j = 0; j < num_vars; ++j) comb.a[j] = wl * l.a[j] + wu * u.a[j];
        comb.a[var] = 0;
        comb.b = wl * l.b + wu * u.b;
        comb.strict = l.strict || u.strict;
        next.push_back(normalize(std::move(comb)));
      }
    dedupe(next);
    // Constant rows can be decided immediately.
    std::vector<Row> kept;
    for (auto& r : next) {
      if (is_zero(r.a)) {
        bool ok = r.strict ? (Rational(0) > r.b) : (Rational(0) >= r.b);
        if (!ok) return std::nullopt;
      } else {
        kept.push_back(std::move(r));
      }
    }
    stages.push_back(std::move(kept));
  }
  for (const auto& r : stages.back()) {
    bool ok = r.strict ? (Rational(0) > r.b) : (Rational(0) >= r.b);
    if (!ok) return std::nullopt;
  }

  RatVector x(num_vars, Rational(0));
  for (std::size_t k = num_vars; k-- > 0;) {
    // stages[k] involves variables k..n-1; k+1.. already fixed.
    std::optional<std::pair<Rational, bool>> lo, hi;
    for (const auto& r : stages[k]) {
      if (r.a[k] == 0) continue;
      Rational rest = 0;
      for (std::size_t j = k + 1; j < num_vars; ++j) rest += r.a[j] * x[j];
      Rational bound = (r.b - rest) / r.a[k];
      if (r.a[k] > 0) {
        if (!lo || bound > lo->first || (bound == lo->first && r.strict)) lo = std::make_pair(bound, r.strict);
      } else {
        if (!hi || bound < hi->first || (bound == hi->first && r.strict)) hi = std::make_pair(bound, r.strict);
      }
    }
    x[k] = pick_value(lo, hi);
  }
  return x;
}

std::optional<RatVector> find_interior_point(const std::vector<RatVector>& normals,
                                             const RatVector& bounds) {
  if (normals.empty()) return RatVector{};
  std::vector<LinearConstraint> sys;
  for (std::size_t i = 0; i < normals.size(); ++i) sys.push_back({normals[i], bounds[i], Relation::Greater});
  return find_feasible_point(sys, normals.front().size());
}

}  // namespace torint
