#include "tautring/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace tautring {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& v, const std::string& where) {
  Rational r;
  try {
    r = parse_rational(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  }
  if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw ConfigError(where + ": expected an integer, got '" + v + "'");
  return static_cast<int>(r.get_num().get_si());
}

Rational parse_positive(const std::string& v, const std::string& where) {
  Rational r;
  try {
    r = parse_rational(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError(where + ": expected a rational, got '" + v + "'");
  }
  if (r <= 0) throw ConfigError(where + ": must be positive");
  return r;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& origin) {
  Config c;
  c.origin = origin;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string where = origin + ":" + std::to_string(lineno);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    auto& k = c.constants;
    if (key == "fujiki_constant") {
      k.fujiki_constant = parse_positive(value, where);
    } else if (key == "q_g") {
      k.q_g = parse_positive(value, where);
    } else if (key == "b2_F") {
      k.b2_F = parse_int(value, where);
      if (k.b2_F < 1) throw ConfigError(where + ": b2_F must be positive");
    } else if (key == "transcendental_rank_K3") {
      k.transcendental_rank_K3 = parse_int(value, where);
      if (k.transcendental_rank_K3 < 0) throw ConfigError(where + ": transcendental_rank_K3 must be non-negative");
    } else if (key == "polarization_degree_d") {
      k.polarization_degrees.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        int d = parse_int(trim(item), where);
        if (d < 2 || d % 2 != 0) throw ConfigError(where + ": polarization degree must be even and >= 2");
        k.polarization_degrees.push_back(d);
      }
      if (k.polarization_degrees.empty()) throw ConfigError(where + ": no polarization degree given");
    } else if (key == "cubic_h4") {
      k.cubic_h4 = parse_positive(value, where);
    } else if (key == "k3_max_power") {
      k.k3_max_power = parse_int(value, where);
      if (k.k3_max_power < 1 || k.k3_max_power > 5) throw ConfigError(where + ": k3_max_power must be in 1..5");
    } else if (key == "hilbert_convention") {
      try {
        c.hilbert = parse_hilbert_convention(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
      }
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

std::string Config::serialize() const {
  std::ostringstream os;
  const auto& k = constants;
  os << "fujiki_constant = " << to_string(k.fujiki_constant) << '\n'
     << "q_g = " << to_string(k.q_g) << '\n'
     << "b2_F = " << k.b2_F << '\n'
     << "transcendental_rank_K3 = " << k.transcendental_rank_K3 << '\n'
     << "polarization_degree_d = ";
  for (std::size_t i = 0; i < k.polarization_degrees.size(); ++i) os << (i ? "," : "") << k.polarization_degrees[i];
  os << '\n'
     << "cubic_h4 = " << to_string(k.cubic_h4) << '\n'
     << "k3_max_power = " << k.k3_max_power << '\n'
     << "hilbert_convention = " << to_string(hilbert) << '\n';
  return os.str();
}

std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path) return explicit_path;
  if (const char* env = std::getenv("TAUTRING_CONFIG"); env && *env) return std::string(env);
  return std::nullopt;
}

Config load_config(const std::optional<std::string>& explicit_path) {
  auto path = resolve_config_path(explicit_path);
  return path ? Config::load(*path) : Config{};
}

}  // namespace tautring
