#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "crsense/errors.hpp"
#include "crsense/scenario.hpp"

namespace crsense::config {

/// Flat store of dotted-key/value pairs, as parsed from the plain-text
/// config format (see docs/config-format.md). Later assignments to the same
/// key win, which is also how overrides are applied.
class ConfigMap {
public:
    static ConfigMap parse_file(const std::string& path);
    /// Throws config_error with "<origin>:<line>:<col>: message" on bad syntax.
    static ConfigMap parse_string(std::string_view text, std::string origin = "<input>");

    void set(std::string key, std::string value);
    /// Applies "key=value" (the --set form). Throws config_error on bad shape.
    void apply_override(const std::string& key_eq_value);

    bool contains(const std::string& key) const { return kv_.count(key) != 0; }
    const std::string* find(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

/// Builds a scenario from a map, collecting malformed values, unknown keys
/// and invariant violations into `violations` instead of throwing.
ScenarioConfig scenario_from_map(const ConfigMap& map, std::vector<std::string>& violations);

/// Strict form: throws config_error listing all violations.
ScenarioConfig scenario_from_map_or_throw(const ConfigMap& map);

/// Parse + build + validate a config file.
ScenarioConfig load_scenario_file(const std::string& path);

}  // namespace crsense::config
