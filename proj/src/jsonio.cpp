#include "branchcrew/jsonio.hpp"

#include <fstream>
#include <sstream>

namespace branchcrew {

void check_fields(const ojson& obj, const std::string& context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!obj.is_object())
    raise(Errc::schema_violation, context + ": expected an object");
  for (const char* key : required) {
    if (!obj.contains(key))
      raise(Errc::schema_violation, context + "." + key + ": missing");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : required)
      if (key == k) { known = true; break; }
    if (!known)
      for (const char* k : optional)
        if (key == k) { known = true; break; }
    if (!known)
      raise(Errc::schema_violation, context + "." + key + ": unknown field");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_failure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::io_failure, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace branchcrew
