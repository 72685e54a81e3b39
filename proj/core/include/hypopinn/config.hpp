#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hypopinn {

/// Flat key-value configuration: one `key = value` per line, dotted
/// section prefixes, '#' comments. Lookups for missing keys throw with
/// the key name.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

 private:
  std::map<std::string, std::string> entries_;
  std::string name_;
};

}  // namespace hypopinn
