#include "torint/io.hpp"

#include "torint/divisors.hpp"

#include <fstream>

#ifndef TORINT_CATALOG_DIR
#define TORINT_CATALOG_DIR "data/catalog"
#endif

namespace torint {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(key, "missing field");
  return doc.at(key);
}

Integer to_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError(where, "expected an integer");
}

std::size_t to_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(where, "expected a nonnegative index");
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

ToricPair parse_fan_json(const json& doc, const ParseOptions& options) {
  if (!doc.is_object()) throw InputError("", "fan file must contain a JSON object");
  std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "";
  const json& jdim = require(doc, "dim");
  if (!jdim.is_number_integer() || jdim.get<long long>() <= 0) throw InputError("dim", "expected a positive integer");
  const auto dim = static_cast<std::size_t>(jdim.get<long long>());

  const json& jrays = require(doc, "rays");
  if (!jrays.is_array() || jrays.empty()) throw InputError("rays", "expected a nonempty array");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < jrays.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    if (!jrays[i].is_array()) throw InputError(where, "expected an array of integers");
    IntVector r;
    for (std::size_t j = 0; j < jrays[i].size(); ++j)
      r.push_back(to_integer(jrays[i][j], where + "[" + std::to_string(j) + "]"));
    rays.push_back(std::move(r));
  }

  const json& jcones = require(doc, "cones");
  if (!jcones.is_array()) throw InputError("cones", "expected an array");
  std::vector<RaySet> cones;
  for (std::size_t c = 0; c < jcones.size(); ++c) {
    const std::string where = "cones[" + std::to_string(c) + "]";
    if (!jcones[c].is_array()) throw InputError(where, "expected an array of ray indices");
    RaySet s;
    for (std::size_t j = 0; j < jcones[c].size(); ++j)
      s.push_back(to_index(jcones[c][j], where + "[" + std::to_string(j) + "]"));
    cones.push_back(std::move(s));
  }

  RaySet removed;
  if (doc.contains("removed")) {
    const json& jr = doc["removed"];
    if (!jr.is_array()) throw InputError("removed", "expected an array of ray indices");
    for (std::size_t j = 0; j < jr.size(); ++j) removed.push_back(to_index(jr[j], "removed[" + std::to_string(j) + "]"));
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& jl = doc["labels"];
    if (!jl.is_array()) throw InputError("labels", "expected an array of strings");
    for (const auto& l : jl) {
      if (!l.is_string()) throw InputError("labels", "expected an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }

  Fan fan(dim, std::move(rays), cones, std::move(labels));
  auto diag = validate(fan);
  if (!diag.smooth) throw InputError("cones", "fan is not smooth: " + diag.messages.front());
  if (!diag.complete)
    throw InputError("cones", "fan is not complete: " + (diag.messages.empty() ? std::string() : diag.messages.back()));
  ToricPair pair(std::move(fan), std::move(removed), std::move(name));
  if (options.require_big && !check_big(pair).big) throw InputError("removed", "log-anticanonical not big");
  return pair;
}

ToricPair parse_fan_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open fan file");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError(path, std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_fan_json(doc, options);
  } catch (const InputError& e) {
    throw InputError(path + (e.location().empty() ? "" : ":" + e.location()), e.message());
  }
}

json serialize_pair(const ToricPair& pair) {
  const Fan& fan = pair.fan();
  json doc;
  doc["name"] = pair.name();
  doc["dim"] = fan.dim();
  json rays = json::array();
  for (const auto& r : fan.rays()) {
    json jr = json::array();
    for (const auto& x : r) jr.push_back(to_int64(x));
    rays.push_back(jr);
  }
  doc["rays"] = rays;
  doc["labels"] = fan.labels();
  doc["cones"] = fan.maximal_cones();
  doc["removed"] = pair.removed();
  return doc;
}

std::string catalog_dir() { return TORINT_CATALOG_DIR; }

std::vector<std::string> catalog_names() {
  return {"p1",    "p1_minus_zero",     "p2",
          "p2_minus_line", "p2_minus_two_lines", "p1xp1",
          "p1xp1_minus_fiber", "p1xp1_minus_two_fibers", "f1",
          "f1_minus_exceptional"};
}

ToricPair load_catalog(const std::string& name, const ParseOptions& options) {
  return parse_fan_file(catalog_dir() + "/" + name + ".json", options);
}

}  // namespace torint
