#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace rch::cli {

// Shortest decimal that reads back to the same double.
std::string format_number(double x);

// Writes to a temporary file next to path, then renames over it.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

// Flat key=value report, one entry per line, in insertion order.
class KeyValueReport {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value) { add(key, format_number(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

  std::string text() const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace rch::cli
