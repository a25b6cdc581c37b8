// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace coi {

using Json = nlohmann::ordered_json;

namespace io {

std::string read_file(const std::filesystem::path& path);

/// Writes atomically (temp file + rename) so readers never see partial files.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Calls `fn(object, line_number)` for every non-blank line, parsed as a JSON object.
/// Throws ParseError naming the line for malformed JSON or non-object values.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&, std::size_t)>& fn);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// Typed field access for schema checks; all throw ParseError with the line number.
std::string require_string(const Json& obj, const char* key, std::size_t line);
long long require_int(const Json& obj, const char* key, std::size_t line);
void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, std::size_t line);

}  // namespace io
}  // namespace coi
