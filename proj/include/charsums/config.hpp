#pragma once

// Sweep configuration, read from a flat JSON document.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charsums/arith.hpp"

namespace charsums {

enum class DPolicy { all, squarefree, prime };
enum class XPolicy { absolute, powers };

struct ExperimentConfig {
  std::vector<u64> q_list;
  std::optional<std::pair<u64, u64>> q_range;  // inclusive; primes only
  DPolicy d_policy = DPolicy::all;
  double delta = 0.5;
  double eta = 0.5;
  double epsilon = 0.1;
  u64 k = 1;
  XPolicy x_policy = XPolicy::powers;
  std::vector<double> x_values{0.4, 0.7, 1.0};
  std::map<std::string, double> constants;  // overrides of default_constants()
  std::vector<u64> seeds{1};
  std::string out_dir = "out";

  /// Named constant with its default filled in; throws ConfigError for an
  /// unknown name.
  double constant(const std::string& name) const;

  /// Primes from q_list and q_range, ascending and deduplicated.
  std::vector<u64> primes() const;
  /// Divisors d >= 2 of q - 1 admitted by d_policy.
  std::vector<u64> moduli(u64 q) const;
  /// All divisors d >= 2 of q - 1, regardless of policy.
  std::vector<u64> all_moduli(u64 q) const;
  /// Distinct lengths x in [1, q - 1], ascending.
  std::vector<u64> lengths(u64 q) const;

  /// Throws ConfigError when an invariant fails.
  void validate() const;
};

/// Keys accepted under "constants" and their defaults.
const std::map<std::string, double>& default_constants();

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

/// Config used when no file is given.
ExperimentConfig default_config();

}  // namespace charsums
