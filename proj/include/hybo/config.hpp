#ifndef HYBO_CONFIG_HPP
#define HYBO_CONFIG_HPP

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "hybo/runner.hpp"

namespace hybo {

/// Flat `key = value` text; `#` starts a comment, blank lines are ignored.
/// Throws std::invalid_argument naming `source` and the line on malformed input.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in, const std::string& source);

/// Sets one RunConfig field from its textual key (the keys emitted by describe()).
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig load_run_config(const std::string& path);

}  // namespace hybo

#endif  // HYBO_CONFIG_HPP
