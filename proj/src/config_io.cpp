#include "config_io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

extern "C" {
extern char** environ;
}

namespace iabnet {

namespace {

struct DoubleField {
  const char* key;
  double NetworkConfig::* member;
};
struct IntField {
  const char* key;
  int NetworkConfig::* member;
};

constexpr DoubleField kDoubleFields[] = {
    {"association.B_m", &NetworkConfig::B_m},
    {"association.B_s", &NetworkConfig::B_s},
    {"cache.file_bits", &NetworkConfig::file_bits},
    {"cache.gamma_p", &NetworkConfig::gamma_p},
    {"density.lambda_m", &NetworkConfig::lambda_m},
    {"density.lambda_s", &NetworkConfig::lambda_s},
    {"density.lambda_u", &NetworkConfig::lambda_u},
    {"pathloss.A_L", &NetworkConfig::A_L},
    {"pathloss.A_NL", &NetworkConfig::A_NL},
    {"pathloss.alpha_L", &NetworkConfig::alpha_L},
    {"pathloss.alpha_NL", &NetworkConfig::alpha_NL},
    {"pathloss.beta", &NetworkConfig::beta},
    {"power.P_m_fc", &NetworkConfig::P_m_fc},
    {"power.P_m_tot", &NetworkConfig::P_m_tot},
    {"power.P_s_fc", &NetworkConfig::P_s_fc},
    {"power.P_s_tot", &NetworkConfig::P_s_tot},
    {"power.rho_m", &NetworkConfig::rho_m},
    {"power.rho_s", &NetworkConfig::rho_s},
    {"power.w_ca", &NetworkConfig::w_ca},
    {"radio.N0", &NetworkConfig::N0},
    {"radio.W", &NetworkConfig::W},
};
constexpr IntField kIntFields[] = {
    {"cache.C", &NetworkConfig::C},
    {"cache.F", &NetworkConfig::F},
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end && *end == '\0' && end != text.c_str() && errno != ERANGE;
}

bool iequals(const std::string& a, const char* b) {
  const size_t n = std::strlen(b);
  if (a.size() != n) return false;
  for (size_t i = 0; i < n; ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

// Environment names are conventionally uppercase while config keys are
// mixed-case, so override keys match case-insensitively.
std::string canonical_env_key(const std::string& key) {
  for (const auto& f : kDoubleFields)
    if (iequals(key, f.key)) return f.key;
  for (const auto& f : kIntFields)
    if (iequals(key, f.key)) return f.key;
  return key;
}

bool parse_int(const std::string& text, int& out) {
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(text.c_str(), &end, 10);
  if (!end || *end != '\0' || end == text.c_str() || errno == ERANGE)
    return false;
  if (v < -2147483647L || v > 2147483647L) return false;
  out = static_cast<int>(v);
  return true;
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : kDoubleFields) keys.push_back(f.key);
  for (const auto& f : kIntFields) keys.push_back(f.key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

bool set_config_value(NetworkConfig& cfg, const std::string& key,
                      const std::string& value, std::string& error) {
  for (const auto& f : kDoubleFields) {
    if (key == f.key) {
      double v;
      if (!parse_double(value, v)) {
        error = key + ": cannot parse '" + value + "' as a number";
        return false;
      }
      cfg.*(f.member) = v;
      return true;
    }
  }
  for (const auto& f : kIntFields) {
    if (key == f.key) {
      int v;
      if (!parse_int(value, v)) {
        error = key + ": cannot parse '" + value + "' as an integer";
        return false;
      }
      cfg.*(f.member) = v;
      return true;
    }
  }
  error = key + ": unknown configuration key";
  return false;
}

std::string get_config_value(const NetworkConfig& cfg,
                             const std::string& key) {
  for (const auto& f : kDoubleFields)
    if (key == f.key) return format_double(cfg.*(f.member));
  for (const auto& f : kIntFields)
    if (key == f.key) return std::to_string(cfg.*(f.member));
  return {};
}

bool parse_config_text(const std::string& text, NetworkConfig& cfg,
                       std::vector<ConfigError>& errors) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      errors.push_back({"", "line " + std::to_string(lineno) +
                                ": expected key=value, got '" + stripped +
                                "'"});
      continue;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    std::string err;
    if (!set_config_value(cfg, key, value, err)) errors.push_back({key, err});
  }
  return errors.empty();
}

bool load_config_file(const std::string& path, NetworkConfig& cfg,
                      std::vector<ConfigError>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back({"", "cannot open config file: " + path});
    return false;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const bool ok = parse_config_text(buf.str(), cfg, errors);
  const bool env_ok = apply_env_overrides(cfg, errors);
  return ok && env_ok;
}

bool apply_env_overrides(NetworkConfig& cfg,
                         std::vector<ConfigError>& errors) {
  static const char kPrefix[] = "IABNET_";
  bool ok = true;
  for (char** e = environ; e && *e; ++e) {
    const char* entry = *e;
    if (std::strncmp(entry, kPrefix, sizeof kPrefix - 1) != 0) continue;
    const char* rest = entry + (sizeof kPrefix - 1);
    const char* eq = std::strchr(rest, '=');
    if (!eq) continue;
    std::string key(rest, eq - rest);
    // Environment names cannot contain '.', so sections use "__".
    size_t pos;
    while ((pos = key.find("__")) != std::string::npos)
      key.replace(pos, 2, ".");
    key = canonical_env_key(key);
    std::string err;
    if (!set_config_value(cfg, key, eq + 1, err)) {
      errors.push_back({key, "environment override " + err});
      ok = false;
    }
  }
  return ok;
}

std::string serialize_config(const NetworkConfig& cfg) {
  std::string out;
  for (const auto& key : config_keys()) {
    out += key;
    out += '=';
    out += get_config_value(cfg, key);
    out += '\n';
  }
  return out;
}

std::uint64_t config_fingerprint(const NetworkConfig& cfg) {
  const std::string text = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a offset basis
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;  // FNV prime
  }
  return h;
}

std::string config_fingerprint_hex(const NetworkConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(config_fingerprint(cfg)));
  return buf;
}

}  // namespace iabnet
