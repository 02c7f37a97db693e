#include "ctrees/util/config_file.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ctrees {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config: bad section at line " + std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected key = value at line " +
                               std::to_string(lineno));
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config: empty key at line " + std::to_string(lineno));
    }
    if (!section.empty()) key = section + "." + key;
    cfg.values_[key] = value;
    cfg.ordered_.emplace_back(key, value);
  }
  return cfg;
}

bool ConfigFile::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ConfigFile::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::invalid_argument("config: missing key " + key);
  return it->second;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& def) const {
  const auto it = values_.find(key);
  return it == values_.end() ? def : it->second;
}

double ConfigFile::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') {
    throw std::invalid_argument("config: key " + key + " is not a number: " + v);
  }
  return x;
}

double ConfigFile::get_double(const std::string& key, double def) const {
  return has(key) ? get_double(key) : def;
}

long ConfigFile::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') {
    throw std::invalid_argument("config: key " + key + " is not an integer: " + v);
  }
  return x;
}

long ConfigFile::get_int(const std::string& key, long def) const {
  return has(key) ? get_int(key) : def;
}

bool ConfigFile::get_bool(const std::string& key, bool def) const {
  if (!has(key)) return def;
  std::string v = get_string(key);
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: key " + key + " is not a boolean: " + v);
}

std::vector<std::string> ConfigFile::get_list(const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream in(get_string(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> ConfigFile::sections_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  const std::string want = prefix + ".";
  for (const auto& [key, value] : ordered_) {
    if (key.rfind(want, 0) != 0) continue;
    const auto next_dot = key.find('.', want.size());
    if (next_dot == std::string::npos) continue;
    const std::string sec = key.substr(0, next_dot);
    if (std::find(out.begin(), out.end(), sec) == out.end()) out.push_back(sec);
  }
  return out;
}

}  // namespace ctrees
