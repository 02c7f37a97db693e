#pragma once

#include <map>
#include <string>
#include <vector>

namespace ctrees {

// Flat "key = value" text files. A [section] line prefixes subsequent keys
// with "section.". '#' starts a comment. Keys keep insertion order for the
// sections() helper; lookups are by full dotted key.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double def) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long def) const;
  bool get_bool(const std::string& key, bool def) const;
  // Comma-separated list value.
  std::vector<std::string> get_list(const std::string& key) const;

  // Distinct "section." prefixes (e.g. "pedestrian.0"), in file order,
  // that match the given leading component (e.g. "pedestrian").
  std::vector<std::string> sections_with_prefix(const std::string& prefix) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return ordered_;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, std::string>> ordered_;
};

}  // namespace ctrees
