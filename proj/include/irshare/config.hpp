// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "irshare/optimizer.hpp"
#include "irshare/scenario.hpp"

namespace irshare {

inline constexpr int kConfigSchemaVersion = 1;

struct Config {
    Scenario scenario;
    OptimizerOptions optimizer;
};

// Parses the versioned JSON configuration. Every field is optional and
// defaults as in the structs, except schema_version which must be
// present and equal to kConfigSchemaVersion. Unknown keys anywhere are
// rejected with the offending path in the message.
Config parse_config(const std::string& json_text);

// parse_config over a file's contents; errors mention the path.
Config load_config(const std::string& path);

// Full round-trip serialization of every supported key.
std::string config_to_json(const Config& cfg);

}  // namespace irshare
