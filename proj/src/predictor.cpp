#include "torint/predictor.hpp"

#include "torint/chi.hpp"
#include "torint/heights.hpp"

#include <cmath>
#include <sstream>

namespace torint {

ObstructionReport obstruction_check(const ToricPair& pair) {
  ObstructionReport out;
  const std::size_t d = pair.dim();
  out.witnesses.push_back(std::vector<Rational>(d, Rational(1)));
  out.has_witness = true;
  // 2^{n_α} has valuation vector n_α at 2, which lies in |Σ_U| for kept α
  FanCharts charts(pair.fan());
  for (auto a : pair.kept()) {
    std::vector<Rational> x;
    for (const auto& c : pair.fan().ray(a)) {
      Rational v = 1;
      for (Integer i = 0; i < abs(c); ++i) v = c > 0 ? Rational(v * 2) : Rational(v / 2);
      x.push_back(v);
    }
    if (is_integral(TorusPoint::from_rationals(x), pair, charts)) {
      out.witnesses.push_back(x);
      break;
    }
  }
  return out;
}

ThetaReport predict(const ToricPair& pair, const PredictConfig& config) {
  ThetaReport r;
  r.pair_name = pair.name();
  r.metric = config.metric;
  r.pic = divisor_sequence(pair);
  if (r.pic.lambda.empty()) throw InputError("removed", "log-anticanonical not big");
  r.clemens = build_clemens(pair);
  r.exponent = compute_b(pair, r.pic, r.clemens);
  r.warnings = r.exponent.warnings;
  r.mode = pair.removed().empty() ? CountingMode::Rational : CountingMode::Integral;
  r.obstruction = obstruction_check(pair);
  r.euler = finite_tamagawa(pair, config.prime_bound);

  std::vector<RaySet> faces = r.mode == CountingMode::Rational ? std::vector<RaySet>{RaySet{}} : r.clemens.top_faces;
  double tail_rel = std::expm1(r.euler.tail_bound);
  for (const auto& face : faces) {
    FaceTerm t;
    t.face = face;
    t.chi = chi_quotient(make_chi_query(pair, face, r.pic.lambda));
    t.finite_volume = r.euler.value;
    auto arch = residue_measure(pair, face, config.metric, config.quadrature);
    t.arch_volume = arch.value;
    t.arch_error = arch.est_error;
    t.theta = to_double(t.chi) * t.finite_volume * t.arch_volume;
    r.theta_total += t.theta;
    r.error.euler_tail += t.theta * tail_rel;
    r.error.quadrature += to_double(t.chi) * t.finite_volume * t.arch_error;
    r.faces.push_back(t);
  }
  double fact = 1;
  for (int i = 2; i < r.exponent.b_pole; ++i) fact *= i;
  r.leading_coefficient = r.theta_total / fact;

  r.assumptions = {
      "torus split over Q with trivial Galois action; all cohomological factors equal 1",
      "standard toric model over Z with good reduction at every prime",
      "archimedean metric: " + describe(config.metric),
      "exponent of log B taken as b_pole",
      "projectivity of X not verified (completeness and smoothness only)",
      "χ evaluated at the image of λ = ρ + div(χ_m), which has the class of ρ",
  };
  if (!(r.theta_total > 0)) r.warnings.push_back("Θ is not positive");
  return r;
}

Verdict verify(const ThetaReport& report, const CensusResult& census, const VerifyTolerances& tol) {
  Verdict v;
  v.b_used = report.exponent.b_pole;
  std::vector<CensusSample> window;
  for (const auto& s : census.samples)
    if (s.B >= tol.fit_min_B) window.push_back(s);

  std::vector<int> candidates;
  const int top = std::max(report.exponent.b_pole, report.exponent.b_theorem) + 1;
  for (int b = 1; b <= top; ++b) candidates.push_back(b);
  v.selection = select_exponent(window, candidates);
  v.empirical_b = v.selection.best;
  v.fit = fit_leading(window, v.b_used);
  v.relative_error = std::abs(v.fit.theta - report.theta_total) / report.theta_total;

  std::ostringstream d1;
  d1 << "empirical b' = " << v.empirical_b << ", b_pole = " << report.exponent.b_pole;
  v.checks.push_back({"exponent", v.empirical_b == report.exponent.b_pole, d1.str()});
  std::ostringstream d2;
  d2 << "fitted Θ = " << v.fit.theta << " ± " << v.fit.theta_stderr << ", predicted Θ = " << report.theta_total
     << ", relative error " << v.relative_error << " (tolerance " << tol.theta_rel << ")";
  v.checks.push_back({"leading_coefficient", v.relative_error <= tol.theta_rel, d2.str()});
  if (!report.exponent.consistent && v.empirical_b != report.exponent.b_theorem)
    v.notes.push_back("census exponent " + std::to_string(v.empirical_b) + " disagrees with b_theorem = " +
                      std::to_string(report.exponent.b_theorem));
  v.pass = true;
  for (const auto& c : v.checks) v.pass = v.pass && c.pass;
  return v;
}

}  // namespace torint
