#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hecke/cartan_types.hpp"
#include "hecke/realization.hpp"

namespace hecke::io {

using Json = nlohmann::ordered_json;

inline constexpr int kConfigVersion = 1;

// Malformed input: unknown keys, bad types, failed validation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One declarative document describes a Coxeter system and its realization.
//   {"version": 1, "type": "B3"}
//   {"version": 1, "names": ["s","t"], "cartan": [[2,-1],[-1,2]],
//    "realization": {"rank": 2, "roots": [[1,0],[0,1]], "coroots": [[2,-1],[-1,2]]},
//    "length_cap": 6, "primes": [2, 3]}
// Named types are expanded to explicit data before anything is hashed, so
// aliases ("B2", "b_2") share cache entries.
struct SystemConfig {
  std::string label;  // for display only; not part of the canonical form
  std::vector<std::string> names;
  CartanMatrix cartan;
  Realization realization;
  bool affine = false;
  std::optional<int> length_cap;
  std::vector<unsigned long> primes;

  // Canonical system data (no caps, no primes, no label); keys in fixed order.
  [[nodiscard]] Json canonical() const {
    Json j;
    j["version"] = kConfigVersion;
    j["names"] = names;
    j["cartan"] = cartan.entries();
    j["realization"] = {{"rank", realization.rank}, {"roots", realization.roots}, {"coroots", realization.coroots}};
    return j;
  }
  [[nodiscard]] std::string canonical_string() const { return canonical().dump(); }

  [[nodiscard]] Json to_json() const {
    Json j = canonical();
    if (length_cap) j["length_cap"] = *length_cap;
    if (!primes.empty()) j["primes"] = primes;
    return j;
  }
};

namespace detail {

inline bool finite_type(const CartanMatrix& c) {
  CoxeterGroup probe(c);
  return probe.longest_element().has_value();
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config: field '") + key + "' is missing or has the wrong type");
  }
}

}  // namespace detail

inline SystemConfig config_from_type(const std::string& type) {
  NamedType nt;
  try {
    nt = named_type(type);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  SystemConfig c;
  c.label = nt.canonical_name;
  c.names = nt.names;
  c.cartan = nt.cartan;
  c.realization = Realization::standard(nt.cartan);
  c.affine = nt.affine;
  return c;
}

inline SystemConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::vector<std::string> known{"version", "type", "names", "cartan", "realization", "length_cap", "primes", "label"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("config: unknown field '" + k + "'");
  if (detail::get_as<int>(j, "version") != kConfigVersion)
    throw ConfigError("config: unsupported version (expected " + std::to_string(kConfigVersion) + ")");

  SystemConfig c;
  if (j.contains("type")) {
    if (j.contains("cartan") || j.contains("names") || j.contains("realization"))
      throw ConfigError("config: give either 'type' or explicit 'cartan'/'names'/'realization', not both");
    c = config_from_type(detail::get_as<std::string>(j, "type"));
  } else {
    try {
      c.cartan = CartanMatrix(detail::get_as<std::vector<std::vector<int>>>(j, "cartan"));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    const std::size_t n = c.cartan.rank();
    c.names = j.contains("names") ? detail::get_as<std::vector<std::string>>(j, "names") : CoxeterGroup::default_names(n);
    if (c.names.size() != n) throw ConfigError("config: one name per generator required");
    for (std::size_t i = 0; i < n; ++i) {
      if (c.names[i].empty() || c.names[i] == "e" || c.names[i].find_first_of(".,: ") != std::string::npos)
        throw ConfigError("config: invalid generator name '" + c.names[i] + "'");
      for (std::size_t k = 0; k < i; ++k)
        if (c.names[k] == c.names[i]) throw ConfigError("config: duplicate generator name '" + c.names[i] + "'");
    }
    if (j.contains("realization")) {
      const Json& r = j.at("realization");
      c.realization.rank = detail::get_as<std::size_t>(r, "rank");
      c.realization.roots = detail::get_as<std::vector<std::vector<long>>>(r, "roots");
      c.realization.coroots = detail::get_as<std::vector<std::vector<long>>>(r, "coroots");
    } else {
      c.realization = Realization::standard(c.cartan);
    }
    c.affine = !detail::finite_type(c.cartan);
    c.label = j.contains("label") ? detail::get_as<std::string>(j, "label") : "custom";
  }
  try {
    c.realization.validate(c.cartan);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (j.contains("length_cap")) {
    int cap = detail::get_as<int>(j, "length_cap");
    if (cap < 0) throw ConfigError("config: length_cap must be nonnegative");
    c.length_cap = cap;
  }
  if (j.contains("primes")) c.primes = detail::get_as<std::vector<unsigned long>>(j, "primes");
  return c;
}

inline SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

}  // namespace hecke::io
