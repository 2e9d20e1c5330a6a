// Assembly of the predicted asymptotic B (log B)^{b-1} Θ / (b-1)! and its
// comparison with the census.
#pragma once

#include "torint/census.hpp"
#include "torint/clemens.hpp"
#include "torint/local.hpp"

#include <string>
#include <vector>

namespace torint {

struct ObstructionReport {
  bool has_witness = false;
  std::vector<std::vector<Rational>> witnesses;  // identity first
};

/// Integral adelic points always exist for split toric pairs; returns the
/// identity and, when available, a nontrivial integral point.
ObstructionReport obstruction_check(const ToricPair& pair);

struct PredictConfig {
  MetricSpec metric;
  std::uint64_t prime_bound = 1000000;
  QuadratureSpec quadrature;
};

enum class CountingMode { Rational, Integral };

struct FaceTerm {
  RaySet face;
  Rational chi;
  double finite_volume = 0;
  double arch_volume = 0;
  double arch_error = 0;
  double theta = 0;
};

struct ErrorBudget {
  double euler_tail = 0;
  double quadrature = 0;
  double monte_carlo = 0;  // χ-values are exact
  double total() const { return euler_tail + quadrature + monte_carlo; }
};

struct ThetaReport {
  std::string pair_name;
  CountingMode mode = CountingMode::Integral;
  ExponentReport exponent;
  PicData pic;
  ClemensComplex clemens;
  EulerProductResult euler;
  std::vector<FaceTerm> faces;
  double theta_total = 0;
  ErrorBudget error;
  /// Predicted N(B)/B (log B)^{1-b} for the exponent used (b_pole).
  double leading_coefficient = 0;
  MetricSpec metric;
  ObstructionReport obstruction;
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;
};

ThetaReport predict(const ToricPair& pair, const PredictConfig& config = {});

struct VerifyTolerances {
  double theta_rel = 0.05;
  Rational fit_min_B = 1000;
};

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Verdict {
  bool pass = false;
  int b_used = 1;
  int empirical_b = 1;
  ExponentSelection selection;
  LeadingFit fit;
  double relative_error = 0;
  std::vector<VerifyCheck> checks;
  std::vector<std::string> notes;
};

/// Compares the census with the prediction: the exponent chosen by the census
/// must equal b_pole and the fitted Θ must agree within the tolerance.
Verdict verify(const ThetaReport& report, const CensusResult& census, const VerifyTolerances& tol = {});

}  // namespace torint
