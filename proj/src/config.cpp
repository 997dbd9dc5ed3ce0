#include "charsums/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "charsums/error.hpp"

namespace charsums {

using nlohmann::json;

const std::map<std::string, double>& default_constants() {
  static const std::map<std::string, double> table{
      {"C", 10.0},        // least non-residue exponent bound
      {"C1", 1.0},        // order threshold multiplier
      {"C2", 1.0},        // order threshold argument
      {"C3", 1.0},        // mean-maximum envelope
      {"C4", 10.0},       // argument discrepancy
      {"C5", 100.0},      // weak equidistribution
      {"c", 1.0},         // exponent on rho in the argument bound
      {"c0", 1.0},        // S_delta density base
      {"c1", 1.0},        // delta regime formula
      {"c2", 1.0},        // large-sum index set structure
      {"C_TK", 4.0},
      {"halasz_C", 1.0},
  };
  return table;
}

double ExperimentConfig::constant(const std::string& name) const {
  const auto& defaults = default_constants();
  if (!defaults.count(name)) throw ConfigError("unknown constant '" + name + "'");
  auto it = constants.find(name);
  return it != constants.end() ? it->second : defaults.at(name);
}

std::vector<u64> ExperimentConfig::primes() const {
  std::set<u64> out(q_list.begin(), q_list.end());
  if (q_range) {
    for (u64 q = q_range->first; q <= q_range->second; ++q) {
      if (is_prime(q)) out.insert(q);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<u64> ExperimentConfig::all_moduli(u64 q) const {
  std::vector<u64> out;
  for (u64 d : divisors(q - 1)) {
    if (d >= 2) out.push_back(d);
  }
  return out;
}

std::vector<u64> ExperimentConfig::moduli(u64 q) const {
  std::vector<u64> out;
  for (u64 d : all_moduli(q)) {
    if (d_policy == DPolicy::squarefree && !is_squarefree(d)) continue;
    if (d_policy == DPolicy::prime && !is_prime(d)) continue;
    out.push_back(d);
  }
  return out;
}

std::vector<u64> ExperimentConfig::lengths(u64 q) const {
  std::set<u64> out;
  for (double v : x_values) {
    u64 x;
    if (x_policy == XPolicy::powers) {
      x = v >= 1.0 ? q - 1 : static_cast<u64>(std::floor(std::pow(static_cast<double>(q), v)));
    } else {
      x = static_cast<u64>(v);
    }
    out.insert(std::clamp<u64>(x, 1, q - 1));
  }
  return {out.begin(), out.end()};
}

void ExperimentConfig::validate() const {
  if (q_list.empty() && !q_range) throw ConfigError("config: one of q_list, q_range is required");
  for (u64 q : q_list) {
    if (!is_prime(q)) throw ConfigError("config: q_list entry " + std::to_string(q) + " is not prime");
    if (q < 3) throw ConfigError("config: q must be >= 3");
  }
  if (q_range && (q_range->first < 3 || q_range->first > q_range->second)) {
    throw ConfigError("config: q_range needs 3 <= lo <= hi");
  }
  auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!open_unit(delta)) throw ConfigError("config: delta must lie in (0, 1)");
  if (!open_unit(eta)) throw ConfigError("config: eta must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
  if (k < 1) throw ConfigError("config: k must be >= 1");
  if (x_values.empty()) throw ConfigError("config: x_values must not be empty");
  for (double v : x_values) {
    if (!(v > 0.0)) throw ConfigError("config: x_values must be positive");
    if (x_policy == XPolicy::absolute && v != std::floor(v)) {
      throw ConfigError("config: absolute x_values must be integers");
    }
  }
  for (const auto& [name, value] : constants) {
    if (!default_constants().count(name)) throw ConfigError("config: unknown constant '" + name + "'");
    if (!(value > 0.0)) throw ConfigError("config: constant '" + name + "' must be positive");
  }
  if (seeds.empty()) throw ConfigError("config: seeds must not be empty");
}

namespace {

const std::map<std::string, DPolicy> kDPolicies{
    {"all", DPolicy::all}, {"squarefree", DPolicy::squarefree}, {"prime", DPolicy::prime}};
const std::map<std::string, XPolicy> kXPolicies{{"absolute", XPolicy::absolute},
                                                {"powers", XPolicy::powers}};

template <class Enum>
std::string enum_name(const std::map<std::string, Enum>& names, Enum value) {
  for (const auto& [k, v] : names) {
    if (v == value) return k;
  }
  return "";
}

template <class Enum>
Enum enum_value(const std::map<std::string, Enum>& names, const json& j, const std::string& key) {
  auto it = names.find(j.get<std::string>());
  if (it == names.end()) throw ConfigError("config: bad value for '" + key + "'");
  return it->second;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  c.q_list.clear();
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "q_list") {
        c.q_list = value.get<std::vector<u64>>();
      } else if (key == "q_range") {
        if (!value.is_object()) throw ConfigError("config: q_range must be an object");
        for (const auto& [rk, rv] : value.items()) {
          if (rk != "lo" && rk != "hi") throw ConfigError("config: unknown key 'q_range." + rk + "'");
        }
        c.q_range = std::make_pair(value.at("lo").get<u64>(), value.at("hi").get<u64>());
      } else if (key == "d_policy") {
        c.d_policy = enum_value(kDPolicies, value, key);
      } else if (key == "delta") {
        c.delta = value.get<double>();
      } else if (key == "eta") {
        c.eta = value.get<double>();
      } else if (key == "epsilon") {
        c.epsilon = value.get<double>();
      } else if (key == "k") {
        c.k = value.get<u64>();
      } else if (key == "x_policy") {
        c.x_policy = enum_value(kXPolicies, value, key);
      } else if (key == "x_values") {
        c.x_values = value.get<std::vector<double>>();
      } else if (key == "constants") {
        c.constants = value.get<std::map<std::string, double>>();
      } else if (key == "seeds") {
        c.seeds = value.get<std::vector<u64>>();
      } else if (key == "out_dir") {
        c.out_dir = value.get<std::string>();
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  json doc = json::object();
  doc["q_list"] = c.q_list;
  if (c.q_range) doc["q_range"] = {{"lo", c.q_range->first}, {"hi", c.q_range->second}};
  doc["d_policy"] = enum_name(kDPolicies, c.d_policy);
  doc["delta"] = c.delta;
  doc["eta"] = c.eta;
  doc["epsilon"] = c.epsilon;
  doc["k"] = c.k;
  doc["x_policy"] = enum_name(kXPolicies, c.x_policy);
  doc["x_values"] = c.x_values;
  doc["constants"] = c.constants;
  doc["seeds"] = c.seeds;
  doc["out_dir"] = c.out_dir;
  return doc.dump(2) + "\n";
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.q_list = {211, 421, 631, 2311, 4621};
  return c;
}

}  // namespace charsums
