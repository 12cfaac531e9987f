// Configuration file handling: flat key=value text with dotted section
// prefixes (e.g. power.P_s_tot=9.1), environment-variable overrides, a
// canonical serialization, and a stable 64-bit fingerprint.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace iabnet {

struct ConfigError {
  std::string key;      // offending key ("" when the line itself is broken)
  std::string message;  // human-readable description
};

// All recognized keys in canonical order.
std::vector<std::string> config_keys();

// Sets one field by key; returns false (with message) on unknown key or
// malformed value.
bool set_config_value(NetworkConfig& cfg, const std::string& key,
                      const std::string& value, std::string& error);

// Reads the canonical value of one field.
std::string get_config_value(const NetworkConfig& cfg, const std::string& key);

// Parses config text. Lines: blank, '#' comments, or key=value. Later
// duplicates win. Returns false and fills `errors` on any problem.
bool parse_config_text(const std::string& text, NetworkConfig& cfg,
                       std::vector<ConfigError>& errors);

// Loads a file then applies IABNET_-prefixed environment overrides
// (IABNET_power__P_s_tot=9.0 overrides power.P_s_tot).
bool load_config_file(const std::string& path, NetworkConfig& cfg,
                      std::vector<ConfigError>& errors);

// Applies environment overrides to an existing config.
bool apply_env_overrides(NetworkConfig& cfg, std::vector<ConfigError>& errors);

// Canonical serialization: sorted key=value lines, full double precision.
std::string serialize_config(const NetworkConfig& cfg);

// FNV-1a 64-bit hash of the canonical serialization; changes iff any field
// changes.
std::uint64_t config_fingerprint(const NetworkConfig& cfg);
std::string config_fingerprint_hex(const NetworkConfig& cfg);

}  // namespace iabnet
