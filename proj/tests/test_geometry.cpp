#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torint/clemens.hpp"
#include "torint/divisors.hpp"
#include "torint/fan.hpp"
#include "torint/io.hpp"

#include <algorithm>
#include <random>

using namespace torint;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

Fan p2_fan() { return Fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}); }

// Points of the toric variety over F_q from its homogeneous coordinates: tuples
// in F_q^n whose zero set spans a cone, modulo the (q-1)^{n-d} torus.
long long cox_count(const Fan& fan, long long q, const std::vector<bool>& allowed) {
  const std::size_t n = fan.num_rays();
  long long total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  long long hits = 0;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    RaySet zeros;
    for (std::size_t i = 0; i < n; ++i) {
      if (c % q == 0) zeros.push_back(i);
      c /= q;
    }
    if (!fan.is_cone(zeros)) continue;
    if (!std::all_of(zeros.begin(), zeros.end(), [&](std::size_t a) { return allowed[a]; })) continue;
    ++hits;
  }
  long long g = 1;
  for (std::size_t i = 0; i < n - fan.dim(); ++i) g *= q - 1;
  REQUIRE(hits % g == 0);
  return hits / g;
}

}  // namespace

TEST_CASE("validate") {
  auto d = validate(p2_fan());
  CHECK(d.smooth);
  CHECK(d.complete);

  Fan singular(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}});
  CHECK_FALSE(validate(singular).smooth);

  Fan affine(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}});
  auto a = validate(affine);
  CHECK(a.smooth);
  CHECK_FALSE(a.complete);

  CHECK_THROWS_AS(Fan(2, {iv({2, 0}), iv({0, 1})}, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Fan(2, {iv({1, 0}), iv({0, 1})}, {{0, 5}}), InputError);
}

TEST_CASE("cone_of_rayset and strata") {
  Fan p2 = p2_fan();
  CHECK(cone_of_rayset(p2, {1, 0}) == RaySet{0, 1});
  CHECK(cone_of_rayset(p2, {}) == RaySet{});
  auto p1p1 = load_catalog("p1xp1").fan();
  CHECK_FALSE(cone_of_rayset(p1p1, {0, 1}).has_value());

  CHECK(stratum_point_count(p2, {0, 1}, 7) == 1);
  CHECK(stratum_point_count(p1p1, {0, 1}, 7) == 0);
  CHECK(stratum_point_count(p2, {}, 3) == 4);
  CHECK_THROWS(stratum_point_count(p2, {}, 1));

  CHECK(variety_point_count(p2, 2) == 7);
  CHECK(variety_point_count(load_catalog("f1").fan(), 2) == 9);
  for (long long p : {2, 3, 5, 7}) CHECK(subfan_point_count(p2, {true, true, false}, p) == p * p);
}

TEST_CASE("orbit decomposition and homogeneous-coordinate counts") {
  for (const auto& name : catalog_names()) {
    auto pair = load_catalog(name, {false});
    const Fan& fan = pair.fan();
    for (long long q : {2, 3, 4, 5}) {
      Integer sum = 0;
      const std::size_t n = fan.num_rays();
      for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        RaySet a;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) a.push_back(i);
        sum += stratum_point_count(fan, a, q);
      }
      CHECK(sum == variety_point_count(fan, q));
    }
    for (long long q : {2, 3}) {
      CHECK(variety_point_count(fan, q) == cox_count(fan, q, std::vector<bool>(fan.num_rays(), true)));
      CHECK(subfan_point_count(fan, pair.kept_mask(), q) == cox_count(fan, q, pair.kept_mask()));
    }
  }
}

TEST_CASE("star fans") {
  Fan p2 = p2_fan();
  auto s = star_fan(p2, {2});
  CHECK(s.fan.dim() == 1);
  CHECK(s.fan.num_rays() == 2);
  std::vector<IntVector> rays = s.fan.rays();
  std::sort(rays.begin(), rays.end());
  CHECK(rays == std::vector<IntVector>{iv({-1}), iv({1})});
  CHECK(validate(s.fan).complete);

  auto whole = star_fan(p2, {});
  CHECK(whole.fan.num_rays() == 3);
  CHECK(whole.fan.maximal_cones() == p2.maximal_cones());

  auto p1p1 = load_catalog("p1xp1").fan();
  auto sp = star_fan(p1p1, {0});
  CHECK(sp.fan.dim() == 1);
  CHECK(sp.fan.num_rays() == 2);
  CHECK(validate(sp.fan).smooth);
  CHECK(validate(sp.fan).complete);
  CHECK_THROWS_AS(star_fan(p1p1, {0, 1}), InputError);

  // Iterated strata: star(star(Σ, α), β) has the same combinatorics as star(Σ, {α, β}).
  for (const auto& name : {"p2", "p1xp1", "f1"}) {
    Fan fan = load_catalog(name).fan();
    for (const auto& c : fan.cones()) {
      if (c.size() != 2) continue;
      auto first = star_fan(fan, {c[0]});
      std::size_t idx = std::find(first.original_ray.begin(), first.original_ray.end(), c[1]) -
                        first.original_ray.begin();
      REQUIRE(idx < first.original_ray.size());
      auto twice = star_fan(first.fan, {idx});
      auto direct = star_fan(fan, c);
      CHECK(twice.fan.num_rays() == direct.fan.num_rays());
      CHECK(twice.fan.cones().size() == direct.fan.cones().size());
    }
  }
}

TEST_CASE("fan charts") {
  Fan p2 = p2_fan();
  FanCharts charts(p2);
  RatVector v = {Rational(-2), Rational(1)};
  RatVector a = charts.coordinates(v);
  CHECK(a == RatVector{Rational(0), Rational(3), Rational(2)});
  auto ad = charts.coordinates(std::vector<double>{-2.0, 1.0});
  CHECK(ad[1] == doctest::Approx(3.0));
  CHECK(ad[2] == doctest::Approx(2.0));
}

TEST_CASE("divisor sequence") {
  auto p2 = divisor_sequence(load_catalog("p2"));
  CHECK(p2.rank_pic_X == 1);
  CHECK(p2.units_rank_r0 == 0);

  auto line = divisor_sequence(load_catalog("p2_minus_line"));
  CHECK(line.rank_pic_U == 0);
  CHECK(line.units_rank_r0 == 0);

  auto two = divisor_sequence(load_catalog("p2_minus_two_lines"));
  CHECK(two.rank_pic_U == 0);
  CHECK(two.units_rank_r0 == 1);

  for (const auto& name : catalog_names()) {
    auto pair = load_catalog(name, {false});
    auto pic = divisor_sequence(pair);
    CHECK(pic.rank_pic_X == pair.fan().num_rays() - pair.dim());
    CHECK(pic.rank_pic_X - pic.rank_pic_U + pic.units_rank_r0 == pair.removed().size());
    CHECK(pic.pic_U_torsion.empty());
    if (!check_big(pair).big) continue;
    for (const auto& l : pic.lambda) CHECK(l > 0);
    // λ and ρ define the same class.
    RatVector rho = to_rational(pic.rho);
    CHECK(divisor_class(pair.fan(), pic.lambda) == divisor_class(pair.fan(), rho));
  }
}

TEST_CASE("bigness") {
  auto line = check_big(load_catalog("p2_minus_line"));
  REQUIRE(line.big);
  for (const auto& l : line.lambda) CHECK(l > 0);
  // The witness quoted for this pair is valid as well.
  RatVector m = {Rational(-1, 3), Rational(-1, 3)};
  auto lam = principal_divisor(load_catalog("p2").fan(), m);
  CHECK(lam[0] + 1 > 0);
  CHECK(lam[1] + 1 > 0);
  CHECK(lam[2] > 0);

  CHECK(check_big(load_catalog("p2_minus_two_lines")).big);
  Fan p1(1, {iv({1}), iv({-1})}, {{0}, {1}});
  CHECK_FALSE(check_big(ToricPair(p1, {0, 1})).big);
  CHECK_FALSE(check_big(load_catalog("p1xp1_minus_two_fibers", {false})).big);
}

TEST_CASE("effective cones") {
  auto p2 = effective_cone(load_catalog("p2"));
  CHECK(p2.ambient_dim() == 1);
  CHECK(p2.generators().size() == 1);

  auto p1p1 = effective_cone(load_catalog("p1xp1"));
  CHECK(p1p1.ambient_dim() == 2);
  CHECK(p1p1.generators().size() == 2);
  CHECK(p1p1.is_pointed());

  auto pic = divisor_sequence(load_catalog("f1"));
  const auto& g = pic.effective_generators;
  // F ~ F2, S ~ E + F.
  CHECK(g[0] == g[2]);
  IntVector sum(g[0].size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = g[0][i] + g[1][i];
  CHECK(g[3] == sum);
  auto f1 = effective_cone(load_catalog("f1"));
  CHECK(f1.dimension() == 2);
  CHECK(facet_normals(f1).size() == 2);
}

TEST_CASE("clemens complex and exponents") {
  auto line = build_clemens(load_catalog("p2_minus_line"));
  CHECK(line.faces.size() == 1);
  CHECK(line.dim == 0);

  auto two = build_clemens(load_catalog("p2_minus_two_lines"));
  CHECK(two.faces.size() == 3);
  CHECK(two.dim == 1);

  auto fibers = build_clemens(load_catalog("p1xp1_minus_two_fibers", {false}));
  CHECK(fibers.dim == 0);
  CHECK(fibers.max_faces.size() == 2);

  auto empty = build_clemens(load_catalog("p2"));
  CHECK(empty.faces.empty());
  CHECK(empty.max_faces == std::vector<RaySet>{RaySet{}});

  auto bp2 = compute_b(load_catalog("p2"));
  CHECK(bp2.b_pole == 1);
  CHECK(bp2.b_theorem == 1);
  auto bl = compute_b(load_catalog("p2_minus_line"));
  CHECK(bl.b_pole == 1);
  CHECK(bl.b_theorem == 1);
  auto bt = compute_b(load_catalog("p2_minus_two_lines"));
  CHECK(bt.b_pole == 1);
  CHECK(bt.b_theorem == 2);
  CHECK_FALSE(bt.consistent);
  CHECK_FALSE(bt.warnings.empty());

  for (const auto& name : catalog_names()) {
    auto pair = load_catalog(name, {false});
    auto cc = build_clemens(pair);
    auto pic = divisor_sequence(pair);
    auto b = compute_b(pair, pic, cc);
    CHECK(b.b_theorem - b.b_pole == static_cast<int>(pic.units_rank_r0));
    const Fan& fan = pair.fan();
    for (const auto& f : cc.faces) CHECK(fan.is_cone(f));
    for (const auto& c : fan.cones()) {
      bool in_d = !c.empty() && std::all_of(c.begin(), c.end(), [&](std::size_t a) { return pair.is_removed(a); });
      CHECK(in_d == (std::find(cc.faces.begin(), cc.faces.end(), c) != cc.faces.end()));
    }
    // Faces containing a vertex are closed under unions that span cones.
    for (const auto& f : cc.faces)
      for (const auto& g : cc.faces) {
        RaySet u;
        std::set_union(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(u));
        if (fan.is_cone(u)) CHECK(std::find(cc.faces.begin(), cc.faces.end(), u) != cc.faces.end());
      }
  }
}

TEST_CASE("fan files") {
  auto pair = load_catalog("p2_minus_line");
  CHECK(pair.removed() == RaySet{2});
  CHECK(pair.fan().dim() == 2);

  nlohmann::json bad = {{"name", "bad"}, {"dim", 2}, {"rays", {{2, 0}, {0, 1}, {-1, -1}}},
                        {"cones", {{0, 1}, {1, 2}, {0, 2}}}, {"removed", nlohmann::json::array()}};
  try {
    parse_fan_json(bad);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.message() == "ray not primitive");
    CHECK(e.location() == "rays[0]");
  }

  nlohmann::json p1 = {{"name", "P1"}, {"dim", 1}, {"rays", {{1}, {-1}}}, {"cones", {{0}, {1}}}, {"removed", {0, 1}}};
  try {
    parse_fan_json(p1);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.message() == "log-anticanonical not big");
  }

  nlohmann::json affine = {{"dim", 2}, {"rays", {{1, 0}, {0, 1}}}, {"cones", {{0, 1}}}};
  CHECK_THROWS_AS(parse_fan_json(affine), InputError);
  CHECK_THROWS_AS(parse_fan_json(nlohmann::json{{"dim", 2}}), InputError);
  CHECK_THROWS_AS(parse_fan_file("/nonexistent/fan.json"), InputError);

  for (const auto& name : catalog_names()) {
    auto a = load_catalog(name, {false});
    auto once = serialize_pair(a);
    auto b = parse_fan_json(once, {false});
    CHECK(serialize_pair(b) == once);
  }
}
