#include "torint/report.hpp"

#include "torint/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace torint {

using nlohmann::json;

namespace {

double positive_number(const json& v, const std::string& where) {
  if (!v.is_number() || !(v.get<double>() > 0)) throw InputError(where, "expected a positive number");
  return v.get<double>();
}

std::uint64_t positive_integer(const json& v, const std::string& where) {
  if (v.is_number_integer() && v.get<long long>() > 0) return static_cast<std::uint64_t>(v.get<long long>());
  if (v.is_number_float()) {
    double x = v.get<double>();
    if (x >= 1 && x == std::floor(x) && x < 1.8e19) return static_cast<std::uint64_t>(x);
  }
  throw InputError(where, "expected a positive integer");
}

Rational bound_value(const json& v, const std::string& where) {
  Rational b;
  if (v.is_number_integer()) {
    b = Rational(Integer(v.get<long long>()));
  } else if (v.is_number_float()) {
    b = rational_from_double(v.get<double>());
  } else if (v.is_string()) {
    try {
      b = parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw InputError(where, "expected a number");
    }
  } else {
    throw InputError(where, "expected a number");
  }
  if (b <= 0) throw InputError(where, "bounds must be positive");
  return b;
}

json string_list(const std::vector<std::string>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

json rayset_json(const RaySet& s) {
  json a = json::array();
  for (auto i : s) a.push_back(i);
  return a;
}

json label_list(const Fan& fan, const RaySet& s) {
  json a = json::array();
  for (auto i : s) a.push_back(fan.labels()[i]);
  return a;
}

json vector_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) throw InputError("config", "expected a JSON object");
  RunConfig c;
  if (doc.contains("fan")) {
    if (!doc["fan"].is_string()) throw InputError("fan", "expected a string");
    c.fan = doc["fan"].get<std::string>();
  }
  if (doc.contains("metric")) {
    if (!doc["metric"].is_string()) throw InputError("metric", "expected a string");
    c.metric = parse_metric(doc["metric"].get<std::string>());
  }
  if (doc.contains("prime_bound")) c.prime_bound = positive_integer(doc["prime_bound"], "prime_bound");
  if (doc.contains("quadrature")) {
    const auto& q = doc["quadrature"];
    if (!q.is_object()) throw InputError("quadrature", "expected an object");
    if (q.contains("rel_tol")) c.quadrature.rel_tol = positive_number(q["rel_tol"], "quadrature.rel_tol");
    if (q.contains("max_depth"))
      c.quadrature.max_depth = static_cast<unsigned>(positive_integer(q["max_depth"], "quadrature.max_depth"));
  }
  if (doc.contains("mc")) {
    const auto& m = doc["mc"];
    if (!m.is_object()) throw InputError("mc", "expected an object");
    if (m.contains("samples")) c.mc_samples = positive_integer(m["samples"], "mc.samples");
    if (m.contains("seed")) {
      if (!m["seed"].is_number_integer() || m["seed"].get<long long>() < 0)
        throw InputError("mc.seed", "expected a nonnegative integer");
      c.seed = static_cast<std::uint64_t>(m["seed"].get<long long>());
    }
  }
  if (doc.contains("census")) {
    const auto& cs = doc["census"];
    if (!cs.is_object()) throw InputError("census", "expected an object");
    if (cs.contains("grid")) {
      const auto& g = cs["grid"];
      if (g.is_array()) {
        for (std::size_t i = 0; i < g.size(); ++i)
          c.grid.push_back(bound_value(g[i], "census.grid[" + std::to_string(i) + "]"));
      } else if (g.is_object()) {
        double lo = g.contains("min_exp") ? g["min_exp"].get<double>() : 1.0;
        if (!g.contains("max_exp")) throw InputError("census.grid.max_exp", "missing field");
        double hi = g["max_exp"].get<double>();
        unsigned per = g.contains("per_decade")
                           ? static_cast<unsigned>(positive_integer(g["per_decade"], "census.grid.per_decade"))
                           : 4u;
        if (hi < lo) throw InputError("census.grid", "max_exp below min_exp");
        c.grid = log_grid(lo, hi, per);
      } else {
        throw InputError("census.grid", "expected an array or an object");
      }
    }
    if (cs.contains("threads")) c.threads = static_cast<unsigned>(positive_integer(cs["threads"], "census.threads"));
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) throw InputError("tolerances", "expected an object");
    if (t.contains("theta_rel")) c.tolerances.theta_rel = positive_number(t["theta_rel"], "tolerances.theta_rel");
    if (t.contains("fit_min_B")) c.tolerances.fit_min_B = bound_value(t["fit_min_B"], "tolerances.fit_min_B");
  }
  if (doc.contains("tube")) {
    const auto& t = doc["tube"];
    if (!t.is_object() || !t.contains("epsilons") || !t["epsilons"].is_array())
      throw InputError("tube.epsilons", "expected an array");
    c.epsilons.clear();
    for (std::size_t i = 0; i < t["epsilons"].size(); ++i) {
      double e = positive_number(t["epsilons"][i], "tube.epsilons[" + std::to_string(i) + "]");
      if (e >= 1) throw InputError("tube.epsilons[" + std::to_string(i) + "]", "must be below 1");
      c.epsilons.push_back(e);
    }
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open config file");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError(path, std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_run_config(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.location(), e.message());
  }
}

ToricPair resolve_fan(const std::string& fan, const ParseOptions& options) {
  if (fan.empty()) throw InputError("fan", "no fan file given");
  if (std::filesystem::exists(fan)) return parse_fan_file(fan, options);
  std::string base = std::filesystem::path(fan).filename().string();
  if (base.size() > 5 && base.substr(base.size() - 5) == ".json") base = base.substr(0, base.size() - 5);
  for (const auto& name : catalog_names())
    if (name == base) return load_catalog(name, options);
  throw InputError(fan, "no such file or catalog entry");
}

json rational_json(const Rational& r) {
  if (is_integral(r)) {
    Integer n = numerator(r);
    if (abs(n) < Integer(1) << 53) return json(to_int64(n));
  }
  return json(to_string(r));
}

json analysis_json(const ToricPair& pair) {
  const Fan& fan = pair.fan();
  json j;
  j["name"] = pair.name();
  j["dim"] = pair.dim();
  j["rays"] = fan.num_rays();
  j["labels"] = string_list(fan.labels());
  j["removed"] = rayset_json(pair.removed());
  auto diag = validate(fan);
  j["smooth"] = diag.smooth;
  j["complete"] = diag.complete;
  json cones = json::array();
  for (const auto& c : fan.maximal_cones()) cones.push_back(rayset_json(c));
  j["maximal_cones"] = cones;
  j["cone_count"] = fan.cones().size();

  auto big = check_big(pair);
  j["big"] = big.big;
  json warnings = json::array();
  try {
    PicData pic = divisor_sequence(pair);
    j["rank_pic_X"] = pic.rank_pic_X;
    j["rank_pic_U"] = pic.rank_pic_U;
    j["units_rank"] = pic.units_rank_r0;
    json tors = json::array();
    for (const auto& t : pic.pic_X_torsion) tors.push_back(to_string(t));
    j["pic_X_torsion"] = tors;
    if (big.big) {
      j["lambda"] = vector_json(pic.lambda);
      j["lambda_m"] = vector_json(pic.lambda_m);
    }
    auto cc = build_clemens(pair);
    json faces = json::array(), top = json::array();
    for (const auto& f : cc.faces) faces.push_back(label_list(fan, f));
    for (const auto& f : cc.top_faces) top.push_back(label_list(fan, f));
    j["clemens"] = {{"dim", cc.dim}, {"faces", faces}, {"top_faces", top}};
    auto ex = compute_b(pair, pic, cc);
    j["b_pole"] = ex.b_pole;
    j["b_theorem"] = ex.b_theorem;
    j["b_consistent"] = ex.consistent;
    for (const auto& w : ex.warnings) warnings.push_back(w);
  } catch (const ConsistencyError& e) {
    warnings.push_back(e.what());
  }
  if (!big.big) warnings.push_back("log-anticanonical divisor is not big; counting function undefined");
  j["warnings"] = warnings;
  return j;
}

json theta_report_json(const ThetaReport& r) {
  json j;
  j["name"] = r.pair_name;
  j["mode"] = r.mode == CountingMode::Rational ? "rational" : "integral";
  j["metric"] = describe(r.metric);
  j["b_pole"] = r.exponent.b_pole;
  j["b_theorem"] = r.exponent.b_theorem;
  j["b_consistent"] = r.exponent.consistent;
  j["b_used"] = r.exponent.b_pole;
  json faces = json::array();
  for (const auto& f : r.faces) {
    json fj;
    fj["face"] = rayset_json(f.face);
    fj["chi"] = rational_json(f.chi);
    fj["chi_value"] = to_double(f.chi);
    fj["finite_volume"] = f.finite_volume;
    fj["arch_volume"] = f.arch_volume;
    fj["arch_error"] = f.arch_error;
    fj["theta"] = f.theta;
    faces.push_back(fj);
  }
  j["faces"] = faces;
  j["theta"] = r.theta_total;
  j["theta_error"] = r.error.total();
  j["error_budget"] = {{"euler_tail", r.error.euler_tail},
                       {"quadrature", r.error.quadrature},
                       {"monte_carlo", r.error.monte_carlo}};
  j["leading_coefficient"] = r.leading_coefficient;
  j["euler"] = {{"value", r.euler.value},
                {"prime_bound", r.euler.prime_bound},
                {"tail_bound", r.euler.tail_bound},
                {"lower", r.euler.lower},
                {"upper", r.euler.upper},
                {"second_order_constant", r.euler.constant}};
  json wit = json::array();
  for (const auto& w : r.obstruction.witnesses) {
    json x = json::array();
    for (const auto& c : w) x.push_back(rational_json(c));
    wit.push_back(x);
  }
  j["obstruction"] = {{"witness_found", r.obstruction.has_witness}, {"witnesses", wit}};
  j["assumptions"] = string_list(r.assumptions);
  j["warnings"] = string_list(r.warnings);
  return j;
}

json verdict_json(const Verdict& v, const ThetaReport& r, const CensusResult& census) {
  json j;
  j["name"] = r.pair_name;
  j["pass"] = v.pass;
  j["theta_predicted"] = r.theta_total;
  j["theta_fitted"] = v.fit.theta;
  j["theta_fitted_stderr"] = v.fit.theta_stderr;
  j["relative_error"] = v.relative_error;
  j["b_used"] = v.b_used;
  j["b_pole"] = r.exponent.b_pole;
  j["b_theorem"] = r.exponent.b_theorem;
  j["empirical_b"] = v.empirical_b;
  json res = json::array();
  for (const auto& [b, rms] : v.selection.residuals) res.push_back({{"b", b}, {"rms", rms}});
  j["exponent_residuals"] = res;
  json checks = json::array();
  for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  j["notes"] = string_list(v.notes);
  j["warnings"] = string_list(r.warnings);
  json samples = json::array();
  for (const auto& s : census.samples) samples.push_back({{"B", rational_json(s.B)}, {"N", s.N}});
  j["census"] = samples;
  return j;
}

std::string census_csv(const CensusResult& census) {
  std::ostringstream os;
  os << "B,N\n";
  for (const auto& s : census.samples) os << to_string(s.B) << "," << s.N << "\n";
  return os.str();
}

}  // namespace torint
