#include "output.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace rch::cli {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void KeyValueReport::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

std::string KeyValueReport::text() const {
  std::string s;
  for (const auto& [k, v] : entries_) s += k + "=" + v + "\n";
  return s;
}

}  // namespace rch::cli
