#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geoquad/errors.hpp"

namespace geoquad {

/// Sectioned key=value config. Lines starting with # or ; are comments,
/// [section] opens a section, keys before any section land in "".
/// Values are untyped strings; typed getters parse on access.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, const std::string& value);

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    uint64_t get_u64(const std::string& section, const std::string& key,
                     uint64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        std::vector<double> fallback = {}) const;
    std::vector<std::string> get_string_list(const std::string& section, const std::string& key,
                                             std::vector<std::string> fallback = {}) const;

    /// Canonical rendering (sections and keys sorted); echoed into reports
    /// for provenance.
    std::string dump() const;

  private:
    const std::string* find(const std::string& section, const std::string& key) const;

    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace geoquad
