// Run configuration and machine-readable reports.
#pragma once

#include "torint/census.hpp"
#include "torint/io.hpp"
#include "torint/predictor.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace torint {

struct RunConfig {
  std::string fan;  // path or catalog name
  MetricSpec metric;
  std::uint64_t prime_bound = 1000000;
  QuadratureSpec quadrature;
  std::uint64_t mc_samples = 200000;
  std::optional<std::uint64_t> seed;
  std::vector<Rational> grid;  // census bounds
  unsigned threads = 1;
  VerifyTolerances tolerances;
  std::vector<double> epsilons{1e-2, 1e-4, 1e-6};
};

/// Keys (all optional): fan, metric ("canonical" | "smoothed:<k>"),
/// prime_bound, quadrature {rel_tol, max_depth}, mc {samples, seed},
/// census {grid: [..] | {min_exp, max_exp, per_decade}, threads},
/// tolerances {theta_rel, fit_min_B}, tube {epsilons}. Throws InputError.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// Resolves a fan argument: an existing file, or a bundled catalog name
/// (with or without the .json suffix).
ToricPair resolve_fan(const std::string& fan, const ParseOptions& options = {});

/// Number with up to 17 significant digits, rationals as "p/q".
nlohmann::json rational_json(const Rational& r);

nlohmann::json analysis_json(const ToricPair& pair);
nlohmann::json theta_report_json(const ThetaReport& report);
nlohmann::json verdict_json(const Verdict& verdict, const ThetaReport& report, const CensusResult& census);
std::string census_csv(const CensusResult& census);

}  // namespace torint
