#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "naive_census.hpp"

#include "torint/census.hpp"
#include "torint/io.hpp"
#include "torint/local.hpp"

#include <cmath>

using namespace torint;

namespace {

std::vector<std::string> big_pairs() {
  std::vector<std::string> out;
  for (const auto& name : catalog_names())
    if (name != "p1xp1_minus_two_fibers") out.push_back(name);
  return out;
}

std::vector<CensusSample> synthetic(const std::function<double(double)>& f) {
  std::vector<CensusSample> s;
  for (auto B : log_grid(2, 8, 2)) s.push_back({B, static_cast<std::uint64_t>(std::llround(f(to_double(B))))});
  return s;
}

}  // namespace

TEST_CASE("enumeration examples") {
  CHECK(enumerate(load_catalog("p1_minus_zero"), 10) == 20);
  CHECK(enumerate(load_catalog("p2_minus_line"), 100) == 400);
  for (const auto& name : big_pairs()) {
    CHECK(enumerate(load_catalog(name), Rational(1, 2)) == 0);
    CHECK(enumerate(load_catalog(name), 1) == (std::uint64_t(1) << load_catalog(name).dim()));
  }
}

TEST_CASE("P2 minus a line matches the square lattice count") {
  auto grid = log_grid(0, 5, 4);
  grid.push_back(Rational(99));
  grid.push_back(Rational(100));
  grid.push_back(Rational(101));
  auto r = census(load_catalog("p2_minus_line"), grid);
  for (const auto& s : r.samples) {
    Integer B = numerator(s.B) / denominator(s.B);
    Integer root = boost::multiprecision::sqrt(B);
    CHECK(s.N == (4 * root * root).convert_to<std::uint64_t>());
  }
}

TEST_CASE("P1 minus a point counts 2 floor(B)") {
  auto grid = log_grid(0, 6, 3);
  grid.push_back(Rational(7, 2));
  auto r = census(load_catalog("p1_minus_zero"), grid);
  for (const auto& s : r.samples) CHECK(s.N == 2 * (numerator(s.B) / denominator(s.B)).convert_to<std::uint64_t>());
}

TEST_CASE("agreement with the naive enumerator") {
  std::vector<double> bounds{1, 2, 3, 5, 10, 17, 30, 64, 100, 250, 500, 1000};
  for (const auto& name : big_pairs()) {
    auto pair = load_catalog(name);
    std::vector<Rational> grid;
    for (double b : bounds) grid.push_back(Rational(Integer(static_cast<long long>(b))));
    auto r = census(pair, grid);
    auto expected = naive::count(pair, bounds);
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      CAPTURE(name);
      CAPTURE(bounds[i]);
      CHECK(r.samples[i].N == expected[i]);
    }
  }
}

TEST_CASE("counts are monotone and independent of thread count") {
  for (const auto& name : {"p2", "p1xp1_minus_fiber", "f1_minus_exceptional"}) {
    auto pair = load_catalog(name);
    auto grid = log_grid(0, 4, 4);
    CensusOptions one, three;
    three.threads = 3;
    auto a = census(pair, grid, one);
    auto b = census(pair, grid, three);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(a.samples[i].N == b.samples[i].N);
      if (i > 0) CHECK(a.samples[i].N >= a.samples[i - 1].N);
    }
  }
}

TEST_CASE("smoothed metric census") {
  MetricSpec sm{MetricMode::Smoothed, 6.0};
  auto pair = load_catalog("p2");
  CensusOptions opt;
  opt.metric = sm;
  auto grid = log_grid(1, 4, 2);
  auto s = census(pair, grid, opt);
  auto c = census(pair, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // smoothed heights dominate canonical ones
    CHECK(s.samples[i].N <= c.samples[i].N);
    CHECK(s.samples[i].N > 0);
  }
}

TEST_CASE("fit_leading on synthetic data") {
  auto flat = synthetic([](double B) { return 4 * B; });
  auto f1 = fit_leading(flat, 1);
  CHECK(f1.coefficient == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(select_exponent(flat, {1, 2, 3}).best == 1);

  auto lin = synthetic([](double B) { return B * (2 * std::log(B) + 5); });
  auto f2 = fit_leading(lin, 2);
  CHECK(f2.coefficient == doctest::Approx(2.0).epsilon(0.01));
  CHECK(f2.theta == doctest::Approx(2.0).epsilon(0.01));
  CHECK(select_exponent(lin, {1, 2, 3}).best == 2);

  auto quad = synthetic([](double B) { return B * (3 * std::log(B) * std::log(B) + std::log(B)); });
  CHECK(fit_leading(quad, 3).theta == doctest::Approx(6.0).epsilon(0.01));
  CHECK(select_exponent(quad, {1, 2, 3, 4}).best == 3);

  std::vector<CensusSample> few{{10, 40}, {20, 80}, {30, 120}};
  CHECK_THROWS_AS(fit_leading(few, 1), InputError);
  std::vector<CensusSample> narrow{{10, 40}, {12, 48}, {14, 56}, {16, 64}, {18, 72}};
  CHECK_THROWS_AS(fit_leading(narrow, 1), InputError);
}

TEST_CASE("equidistribution histograms") {
  auto p2l = load_catalog("p2_minus_line");
  auto h = equidistribution_histogram(p2l, 10000, {}, {});
  CHECK(h.cells.size() == 4);
  for (const auto& c : h.cells) CHECK(c.empirical == doctest::Approx(0.25));

  auto p1z = equidistribution_histogram(load_catalog("p1_minus_zero"), 1000, {}, {});
  for (const auto& c : p1z.cells) CHECK(c.empirical == doctest::Approx(0.5));

  for (std::uint64_t p : {2, 3}) {
    auto hp = equidistribution_histogram(p2l, 40000, {}, {p});
    double unit = 0;
    for (const auto& c : hp.cells)
      if (c.unit[0]) unit += c.empirical;
    auto dens = denef_local(p2l, p, rho_on_kept(p2l));
    double predicted = std::pow(double(p) - 1, 2) / std::pow(double(p), 2) / to_double(*dens.density);
    double sigma = std::sqrt(predicted * (1 - predicted) / (double(hp.total) / 4));
    CHECK(std::abs(unit - predicted) <= 3 * sigma);
  }
  CHECK_THROWS_AS(equidistribution_histogram(p2l, Rational(1, 2), {}, {}), InputError);
}
