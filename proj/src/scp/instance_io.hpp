#pragma once

#include <string>

#include <json.hpp>

#include "scp/instance.hpp"

namespace scp {

using Json = nlohmann::ordered_json;

Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

/// Loads and parses an instance file. Throws DataError on malformed input or
/// when validate_instance reports violations (their messages are included).
Instance load_instance_file(const std::string& path);

/// Parses without running validation; used by `scp validate`-style paths that
/// want the violation list as data.
Instance parse_instance_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a hash of the raw file bytes, as a 16-hex-digit string. Used in
/// provenance headers so re-runs are attributable to exact inputs.
std::string file_fnv1a_hex(const std::string& path);
std::string text_fnv1a_hex(const std::string& text);

}  // namespace scp
