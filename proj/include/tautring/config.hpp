#pragma once

#include "tautring/constants.hpp"
#include "tautring/k3.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace tautring {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration; '#' starts a comment. Unknown or repeated
/// keys are errors. Keys: fujiki_constant, q_g, b2_F, transcendental_rank_K3,
/// polarization_degree_d (comma list), cubic_h4, k3_max_power, hilbert_convention.
struct Config {
  ModelConstants constants;
  HilbertConvention hilbert = HilbertConvention::Partition;
  std::string origin = "built-in defaults";

  static Config parse(std::istream& in, const std::string& origin);
  static Config load(const std::string& path);
  std::string serialize() const;
};

/// Explicit path, else $TAUTRING_CONFIG, else none (built-in defaults).
std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path);
Config load_config(const std::optional<std::string>& explicit_path);

}  // namespace tautring
