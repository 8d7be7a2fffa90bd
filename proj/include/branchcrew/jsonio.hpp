#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "branchcrew/errors.hpp"

namespace branchcrew {

// Canonical documents keep keys in insertion order, so the writer controls
// the byte layout. All exports are compact UTF-8, newline-terminated.
using ojson = nlohmann::ordered_json;

inline std::string canonical_dump(const ojson& doc) { return doc.dump() + "\n"; }

inline ojson parse_json(std::string_view raw, const char* what) {
  ojson doc = ojson::parse(raw, nullptr, false);
  if (doc.is_discarded())
    raise(Errc::malformed_json, std::string(what) + ": not valid JSON");
  return doc;
}

// Strict object check: every required key present, no keys outside
// required+optional. Violations name the offending field.
void check_fields(const ojson& obj, const std::string& context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {});

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace branchcrew
