#include "torint/fan.hpp"

#include <algorithm>
#include <map>

namespace torint {

namespace {

IntegerMatrix ray_columns(const Fan& fan, const RaySet& a) {
  IntegerMatrix m(fan.dim(), a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < fan.dim(); ++i) m(i, j) = fan.ray(a[j])[i];
  return m;
}

Integer ipow(const Integer& base, std::size_t e) {
  Integer r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Fan::Fan(std::size_t dim, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
         std::vector<std::string> labels)
    : dim_(dim), rays_(std::move(rays)), labels_(std::move(labels)) {
  if (dim_ == 0) throw InputError("dim", "dimension must be positive");
  std::set<IntVector> seen;
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    if (rays_[i].size() != dim_) throw InputError(where, "ray has wrong dimension");
    Integer c = content(rays_[i]);
    if (c == 0) throw InputError(where, "ray is zero");
    if (c != 1) throw InputError(where, "ray not primitive");
    if (!seen.insert(rays_[i]).second) throw InputError(where, "repeated ray");
  }
  if (labels_.empty())
    for (std::size_t i = 0; i < rays_.size(); ++i) labels_.push_back("D" + std::to_string(i));
  if (labels_.size() != rays_.size()) throw InputError("labels", "one label per ray required");

  cone_set_.insert(RaySet{});
  for (std::size_t i = 0; i < rays_.size(); ++i) cone_set_.insert(RaySet{i});
  for (std::size_t c = 0; c < cones.size(); ++c) {
    RaySet s = cones[c];
    std::sort(s.begin(), s.end());
    const std::string where = "cones[" + std::to_string(c) + "]";
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError(where, "repeated ray index");
    for (auto i : s)
      if (i >= rays_.size()) throw InputError(where, "ray index out of range");
    if (s.size() > 24) throw InputError(where, "cone has too many rays");
    const std::size_t k = s.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      RaySet face;
      for (std::size_t j = 0; j < k; ++j)
        if (mask >> j & 1) face.push_back(s[j]);
      cone_set_.insert(face);
    }
  }
  cones_.assign(cone_set_.begin(), cone_set_.end());
  std::stable_sort(cones_.begin(), cones_.end(),
                   [](const RaySet& a, const RaySet& b) { return a.size() < b.size(); });
  for (const auto& c : cones_) {
    bool maximal = true;
    for (std::size_t r = 0; r < rays_.size() && maximal; ++r) {
      if (std::binary_search(c.begin(), c.end(), r)) continue;
      RaySet bigger = c;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), r), r);
      if (cone_set_.count(bigger)) maximal = false;
    }
    if (maximal) maximal_.push_back(c);
  }
}

bool Fan::is_cone(const RaySet& a) const { return cone_set_.count(a) > 0; }

FanDiagnostics validate(const Fan& fan) {
  FanDiagnostics diag;
  diag.smooth = true;
  for (const auto& c : fan.maximal_cones()) {
    if (c.empty()) continue;
    auto s = smith_decompose(ray_columns(fan, c));
    bool ok = s.rank == c.size() &&
              std::all_of(s.invariants.begin(), s.invariants.end(), [](const Integer& x) { return x == 1; });
    if (!ok) {
      diag.smooth = false;
      std::string ids;
      for (auto i : c) ids += (ids.empty() ? "" : ",") + std::to_string(i);
      diag.messages.push_back("cone {" + ids + "} is not smooth");
    }
  }

  const std::size_t d = fan.dim();
  std::map<RaySet, int> facet_count;
  std::size_t top = 0;
  for (const auto& c : fan.cones()) {
    if (c.size() == d - 1) facet_count.emplace(c, 0);
  }
  for (const auto& c : fan.cones()) {
    if (c.size() != d) continue;
    ++top;
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      RaySet f;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (j != drop) f.push_back(c[j]);
      ++facet_count[f];
    }
  }
  diag.complete = top > 0;
  if (top == 0) diag.messages.push_back("fan has no full-dimensional cone");
  for (const auto& [f, n] : facet_count)
    if (n != 2) {
      diag.complete = false;
      std::string ids;
      for (auto i : f) ids += (ids.empty() ? "" : ",") + std::to_string(i);
      diag.messages.push_back("codimension-one cone {" + ids + "} lies in " + std::to_string(n) +
                              " maximal cones (expected 2)");
    }
  return diag;
}

std::optional<RaySet> cone_of_rayset(const Fan& fan, RaySet a) {
  std::sort(a.begin(), a.end());
  if (fan.is_cone(a)) return a;
  return std::nullopt;
}

Integer stratum_point_count(const Fan& fan, const RaySet& a, const Integer& q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  RaySet s = a;
  std::sort(s.begin(), s.end());
  if (!fan.is_cone(s)) return 0;
  return ipow(q - 1, fan.dim() - s.size());
}

Integer variety_point_count(const Fan& fan, const Integer& q) {
  return subfan_point_count(fan, std::vector<bool>(fan.num_rays(), true), q);
}

Integer subfan_point_count(const Fan& fan, const std::vector<bool>& allowed, const Integer& q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  Integer total = 0;
  for (const auto& c : fan.cones()) {
    if (!std::all_of(c.begin(), c.end(), [&](std::size_t i) { return allowed[i]; })) continue;
    total += ipow(q - 1, fan.dim() - c.size());
  }
  return total;
}

IntegerMatrix unimodular_completion(const Fan& fan, const RaySet& a) {
  const std::size_t d = fan.dim();
  const std::size_t k = a.size();
  IntegerMatrix r = ray_columns(fan, a);
  auto s = smith_decompose(r);
  if (s.rank != k || std::any_of(s.invariants.begin(), s.invariants.end(), [](const Integer& x) { return x != 1; }))
    throw InputError("", "ray set does not extend to a lattice basis");
  auto left_inv = inverse(to_rational(s.left));
  IntegerMatrix b(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) b(i, j) = r(i, j);
    for (std::size_t j = k; j < d; ++j) b(i, j) = numerator((*left_inv)(i, j));
  }
  return b;
}

StarFan star_fan(const Fan& fan, const RaySet& a_in) {
  RaySet a = a_in;
  std::sort(a.begin(), a.end());
  if (!fan.is_cone(a)) throw InputError("", "ray set spans no cone of the fan");
  const std::size_t d = fan.dim();
  const std::size_t k = a.size();
  if (k == 0) {
    StarFan out{fan, {}, IntegerMatrix::identity(d)};
    for (std::size_t i = 0; i < fan.num_rays(); ++i) out.original_ray.push_back(i);
    return out;
  }
  IntegerMatrix b = unimodular_completion(fan, a);
  auto b_inv = *inverse(to_rational(b));
  IntegerMatrix proj(d - k, d);
  for (std::size_t i = k; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) proj(i - k, j) = numerator(b_inv(i, j));

  std::map<std::size_t, std::size_t> new_index;
  StarFan out;
  out.projection = proj;
  std::vector<IntVector> rays;
  std::vector<std::string> labels;
  std::vector<RaySet> cones;
  for (const auto& c : fan.cones()) {
    if (!std::includes(c.begin(), c.end(), a.begin(), a.end())) continue;
    RaySet img;
    for (auto r : c) {
      if (std::binary_search(a.begin(), a.end(), r)) continue;
      auto it = new_index.find(r);
      if (it == new_index.end()) {
        it = new_index.emplace(r, rays.size()).first;
        rays.push_back(proj * fan.ray(r));
        labels.push_back(fan.labels()[r]);
        out.original_ray.push_back(r);
      }
      img.push_back(it->second);
    }
    cones.push_back(img);
  }
  if (d - k == 0) {
    out.fan = Fan();
    return out;
  }
  out.fan = Fan(d - k, std::move(rays), cones, std::move(labels));
  return out;
}

FanCharts::FanCharts(const Fan& fan) : fan_(fan) {
  for (const auto& c : fan.maximal_cones()) {
    if (c.size() != fan.dim()) throw InputError("", "charts require a complete fan of full-dimensional cones");
    auto inv = torint::inverse(to_rational(ray_columns(fan, c)));
    if (!inv) throw InputError("", "maximal cone is degenerate");
    std::vector<std::vector<double>> dbl(c.size(), std::vector<double>(fan.dim()));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < fan.dim(); ++j) dbl[i][j] = to_double((*inv)(i, j));
    inverse_.push_back(std::move(*inv));
    inverse_double_.push_back(std::move(dbl));
  }
}

std::size_t FanCharts::locate(const RatVector& v) const {
  const auto& maxc = fan_.maximal_cones();
  for (std::size_t k = 0; k < maxc.size(); ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < maxc[k].size() && ok; ++i) {
      Rational t = 0;
      for (std::size_t j = 0; j < fan_.dim(); ++j) t += inverse_[k](i, j) * v[j];
      ok = t >= 0;
    }
    if (ok) return k;
  }
  throw ConsistencyError("vector lies outside the support of the fan");
}

RatVector FanCharts::coordinates(const RatVector& v) const {
  std::size_t k = locate(v);
  const auto& c = fan_.maximal_cones()[k];
  RatVector out(fan_.num_rays(), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rational t = 0;
    for (std::size_t j = 0; j < fan_.dim(); ++j) t += inverse_[k](i, j) * v[j];
    out[c[i]] = t;
  }
  return out;
}

std::vector<double> FanCharts::coordinates(const std::vector<double>& v) const {
  const auto& maxc = fan_.maximal_cones();
  std::size_t best = 0;
  double best_min = -1e300;
  std::vector<double> t(fan_.dim());
  for (std::size_t k = 0; k < maxc.size(); ++k) {
    double mn = 1e300;
    for (std::size_t i = 0; i < maxc[k].size(); ++i) {
      double s = 0;
      for (std::size_t j = 0; j < fan_.dim(); ++j) s += inverse_double_[k][i][j] * v[j];
      mn = std::min(mn, s);
    }
    if (mn >= 0) {
      best = k;
      break;
    }
    if (mn > best_min) {
      best_min = mn;
      best = k;
    }
  }
  std::vector<double> out(fan_.num_rays(), 0.0);
  const auto& c = maxc[best];
  for (std::size_t i = 0; i < c.size(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < fan_.dim(); ++j) s += inverse_double_[best][i][j] * v[j];
    out[c[i]] = std::max(s, 0.0);
  }
  return out;
}

ToricPair::ToricPair(Fan fan, RaySet removed, std::string name)
    : fan_(std::move(fan)), name_(std::move(name)), removed_(std::move(removed)) {
  std::sort(removed_.begin(), removed_.end());
  if (std::adjacent_find(removed_.begin(), removed_.end()) != removed_.end())
    throw InputError("removed", "repeated ray index");
  removed_mask_.assign(fan_.num_rays(), false);
  for (auto i : removed_) {
    if (i >= fan_.num_rays()) throw InputError("removed", "ray index out of range");
    removed_mask_[i] = true;
  }
  kept_mask_.assign(fan_.num_rays(), false);
  for (std::size_t i = 0; i < fan_.num_rays(); ++i)
    if (!removed_mask_[i]) {
      kept_.push_back(i);
      kept_mask_[i] = true;
    }
}

IntVector ToricPair::rho() const {
  IntVector r(fan_.num_rays());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = kept_mask_[i] ? 1 : 0;
  return r;
}

bool ToricPair::in_kept_support(const FanCharts& charts, const RatVector& v) const {
  RatVector a = charts.coordinates(v);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && removed_mask_[i]) return false;
  return true;
}

}  // namespace torint
