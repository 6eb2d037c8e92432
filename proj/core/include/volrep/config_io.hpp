#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "volrep/model.hpp"

namespace volrep {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// JSON text whose keys mirror the ScenarioConfig field names.
std::string serialize_config(ScenarioConfig const &config);

/// Throws ConfigError on malformed JSON, missing keys, or unknown enum names.
/// Does not run validate_config.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(std::filesystem::path const &path);
void save_config(std::filesystem::path const &path, ScenarioConfig const &config);

/// Sets a dotted field path (e.g. "mechanism.reputation_type") to a value.
/// The value is read as JSON when it parses as such, otherwise as a string.
ScenarioConfig apply_override(ScenarioConfig const &config, std::string_view dotted_path,
                              std::string_view value);

}  // namespace volrep
