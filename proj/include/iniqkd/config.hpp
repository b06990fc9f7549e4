#pragma once

#include <string>
#include <vector>

#include "iniqkd/params.hpp"

namespace iniqkd {

// Flat key=value lines, '#' starts a comment, blank lines ignored. Keys match
// the SweepConfig field names in lower_snake_case. Unknown keys and malformed
// values throw std::runtime_error naming the key.
SweepConfig parse_config_text(const std::string& text);
SweepConfig load_config_file(const std::string& path);

// Resolved config as parseable key=value lines (used by show-config).
std::string config_to_text(const SweepConfig& config);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
SweepConfig preset_config(const std::string& name);

}  // namespace iniqkd
