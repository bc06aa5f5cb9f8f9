#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsched/model.hpp"

namespace lsched {

using ConfigPairs = std::vector<std::pair<std::string, std::string>>;

/// The configuration used when no file and no overrides are given:
/// reference defaults, 4 RT users at lambda 0.3, 2 NRT users at lambda 1.
SystemConfig default_config();

/// Parses flat `key = value` lines. Blank lines and `#` comments are skipped.
/// Throws ConfigError with the offending line number.
ConfigPairs parse_key_values(std::string_view text);

/// Parses a single `key=value` override as given on the command line.
std::pair<std::string, std::string> parse_override(std::string_view text);

/// Applies pairs on top of `base` and validates the result.
///
/// Keys are the SystemConfig field names. Per-user fields (`lambda`, `q`,
/// `mean_gain`) take either one value, broadcast to every user of the field,
/// or a comma-separated list of the exact length. `lambda_rt` and
/// `lambda_nrt` broadcast to one user class. `n_rt` and `n_nrt` are applied
/// before any other key regardless of their position.
SystemConfig apply_config(SystemConfig base, const ConfigPairs& pairs);

/// Reads a config file and applies it, then the overrides, to default_config().
/// Throws ConfigError when the file cannot be read.
SystemConfig load_config(const std::filesystem::path& path, const ConfigPairs& overrides = {});

/// Serialises every key so that apply_config(default_config(), parse(text))
/// reproduces `config`.
std::string format_config(const SystemConfig& config);

}  // namespace lsched
