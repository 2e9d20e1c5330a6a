#include "torint/chi.hpp"
#include "torint/io.hpp"
#include "torint/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

using namespace torint;
using nlohmann::json;

namespace {

struct Flags {
  std::string fan, config, metric, bmax, grid;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed, samples, prime_bound;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--fan", f.fan, "fan JSON file or catalog name");
  cmd->add_option("--config", f.config, "run configuration JSON");
  cmd->add_option("--metric", f.metric, "canonical | smoothed:<k>");
  cmd->add_option("--bmax", f.bmax, "largest height bound of the census");
  cmd->add_option("--grid", f.grid, "comma separated height bounds");
  cmd->add_option("--threads", f.threads, "census threads (0: all cores)");
  cmd->add_option("--seed", f.seed, "random seed for the Monte Carlo oracles");
  cmd->add_option("--samples", f.samples, "Monte Carlo samples");
  cmd->add_option("--prime-bound", f.prime_bound, "last prime of the Euler product");
}

Rational parse_bound(const std::string& text, const std::string& where) {
  Rational b;
  try {
    b = parse_rational(text);
  } catch (const std::exception&) {
    throw InputError(where, "not a number: '" + text + "'");
  }
  if (b <= 0) throw InputError(where, "bounds must be positive");
  return b;
}

RunConfig assemble(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_run_config(f.config);
  if (!f.fan.empty()) c.fan = f.fan;
  if (!f.metric.empty()) c.metric = parse_metric(f.metric);
  if (f.threads) c.threads = *f.threads;
  if (f.seed) c.seed = *f.seed;
  if (f.samples) {
    if (*f.samples == 0) throw InputError("--samples", "must be positive");
    c.mc_samples = *f.samples;
  }
  if (f.prime_bound) {
    if (*f.prime_bound < 2) throw InputError("--prime-bound", "must be at least 2");
    c.prime_bound = *f.prime_bound;
  }
  if (!f.grid.empty()) {
    c.grid.clear();
    std::stringstream ss(f.grid);
    std::string item;
    while (std::getline(ss, item, ',')) c.grid.push_back(parse_bound(item, "--grid"));
  }
  if (!f.bmax.empty()) {
    Rational bmax = parse_bound(f.bmax, "--bmax");
    double top = std::floor(std::log10(to_double(bmax)) + 1e-12);
    std::vector<Rational> grid;
    if (top >= 1) grid = log_grid(1, top, 4);
    for (const auto& b : c.grid)
      if (b <= bmax) grid.push_back(b);
    grid.push_back(bmax);
    c.grid = grid;
  }
  if (c.fan.empty()) throw InputError("--fan", "no fan file given");
  return c;
}

PredictConfig predict_config(const RunConfig& c) { return {c.metric, c.prime_bound, c.quadrature}; }

CensusResult run_census(const ToricPair& pair, const RunConfig& c) {
  if (c.grid.empty()) throw InputError("census.grid", "no height bounds given (use --bmax or --grid)");
  return census(pair, c.grid, {c.metric, c.threads});
}

json comparison(const std::string& what, double exact, double estimate, double stderr_, bool pass) {
  return {{"what", what}, {"exact", exact}, {"estimate", estimate}, {"stderr", stderr_}, {"pass", pass}};
}

int run_oracle(const ToricPair& pair, const RunConfig& c) {
  if (!c.seed) throw InputError("mc.seed", "a seed is required for the Monte Carlo oracles");
  const std::uint64_t seed = *c.seed;
  PicData pic = divisor_sequence(pair);
  ClemensComplex cc = build_clemens(pair);
  const Fan& fan = pair.fan();
  auto label = [&](const RaySet& a) {
    std::string s = "{";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + fan.labels()[a[i]];
    return s + "}";
  };

  bool all = true;
  json chi = json::array();
  std::vector<RaySet> faces{RaySet{}};
  for (const auto& f : cc.faces) faces.push_back(f);
  std::uint64_t salt = 0;
  for (const auto& face : faces) {
    ChiQuery q = make_chi_query(pair, face, pic.lambda);
    double exact = to_double(chi_quotient(q));
    McEstimate mc = chi_quotient_monte_carlo(q, c.mc_samples, seed + salt++);
    bool pass = std::abs(mc.value - exact) <= 3 * mc.stderr_ + 1e-12 * std::abs(exact);
    all = all && pass;
    chi.push_back(comparison("chi " + label(face), exact, mc.value, mc.stderr_, pass));
  }

  json tube = json::array();
  for (const auto& face : faces) {
    auto res = residue_measure(pair, face, c.metric, c.quadrature);
    auto mc = tube_oracle(pair, face, c.metric, c.epsilons, c.mc_samples, seed + salt++);
    double tol = std::max(0.02 * res.value, 3 * mc.limit.stderr_);
    bool pass = std::abs(mc.limit.value - res.value) <= tol;
    all = all && pass;
    json j = comparison("residue " + label(face), res.value, mc.limit.value, mc.limit.stderr_, pass);
    json path = json::array();
    for (const auto& e : mc.estimates)
      path.push_back({{"epsilon", e.epsilon}, {"value", e.value}, {"stderr", e.stderr_}});
    j["tube"] = path;
    tube.push_back(j);
  }

  json denef = json::array();
  for (std::uint64_t p : {2u, 3u, 5u}) {
    LocalDensity ld = denef_local(pair, p, rho_on_kept(pair));
    Rational brute = residue_class_density(pair, p, 2);
    bool pass = ld.density && *ld.density == brute;
    all = all && pass;
    denef.push_back({{"p", p},
                     {"k", 2},
                     {"denef", ld.density ? to_string(*ld.density) : "n/a"},
                     {"residue_classes", to_string(brute)},
                     {"pass", pass}});
  }

  json out;
  out["name"] = pair.name();
  out["metric"] = describe(c.metric);
  out["seed"] = seed;
  out["samples"] = c.mc_samples;
  out["chi"] = chi;
  out["residue"] = tube;
  out["denef"] = denef;
  out["pass"] = all;
  std::cout << out.dump(2) << "\n";
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral points of bounded height on toric varieties"};
  app.require_subcommand(1);
  Flags f;
  auto* analyze = app.add_subcommand("analyze", "ranks, cones, Clemens complex and the exponent b");
  auto* predict_cmd = app.add_subcommand("predict", "leading constant of the counting function");
  auto* count = app.add_subcommand("count", "census N(B) as CSV");
  auto* verify_cmd = app.add_subcommand("verify", "prediction against the census");
  auto* oracle = app.add_subcommand("oracle", "independent Monte Carlo and residue-counting checks");
  for (auto* cmd : {analyze, predict_cmd, count, verify_cmd, oracle}) add_common(cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    RunConfig c = assemble(f);
    if (analyze->parsed()) {
      ToricPair pair = resolve_fan(c.fan, {false});
      std::cout << analysis_json(pair).dump(2) << "\n";
      return 0;
    }
    ToricPair pair = resolve_fan(c.fan);
    if (predict_cmd->parsed()) {
      std::cout << theta_report_json(predict(pair, predict_config(c))).dump(2) << "\n";
      return 0;
    }
    if (count->parsed()) {
      std::cout << census_csv(run_census(pair, c));
      return 0;
    }
    if (verify_cmd->parsed()) {
      ThetaReport report = predict(pair, predict_config(c));
      CensusResult cr = run_census(pair, c);
      Verdict v = verify(report, cr, c.tolerances);
      std::cout << verdict_json(v, report, cr).dump(2) << "\n";
      return v.pass ? 0 : 2;
    }
    return run_oracle(pair, c);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
