// Fan files, run configuration and JSON report emission.
#pragma once

#include "torint/fan.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace torint {

struct ParseOptions {
  bool require_big = true;
};

/// Builds and validates a toric pair from the fan JSON schema
/// {name, dim, rays, cones, removed[, labels]}. Throws InputError.
ToricPair parse_fan_json(const nlohmann::json& doc, const ParseOptions& options = {});
ToricPair parse_fan_file(const std::string& path, const ParseOptions& options = {});

/// Inverse of parse_fan_json (cones are written as maximal cones).
nlohmann::json serialize_pair(const ToricPair& pair);

/// Directory holding the bundled catalog fixtures (compile-time default).
std::string catalog_dir();

/// Catalog fixture names in a fixed order.
std::vector<std::string> catalog_names();

ToricPair load_catalog(const std::string& name, const ParseOptions& options = {});

}  // namespace torint
