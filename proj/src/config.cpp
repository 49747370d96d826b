#include "geoquad/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace geoquad {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']')
                throw ConfigError("config: unterminated section header at line " +
                                  std::to_string(lineno));
            section = trim(stripped.substr(1, stripped.size() - 2));
            cfg.sections_[section];
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key=value at line " + std::to_string(lineno));
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty())
            throw ConfigError("config: empty key at line " + std::to_string(lineno));
        cfg.sections_[section][key] = trim(stripped.substr(eq + 1));
    }
    return cfg;
}

const std::string* Config::find(const std::string& section, const std::string& key) const {
    const auto sit = sections_.find(section);
    if (sit == sections_.end()) return nullptr;
    const auto kit = sit->second.find(key);
    return kit == sit->second.end() ? nullptr : &kit->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = value;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    const std::string* v = find(section, key);
    if (!v) throw ConfigError("config: missing key [" + section + "] " + key);
    return *v;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? *v : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(raw.c_str(), &end);
    if (errno != 0 || end == raw.c_str() || *end != '\0')
        throw ConfigError("config: [" + section + "] " + key + " is not a number: " + raw);
    return value;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    const double value = get_double(section, key);
    const int i = static_cast<int>(value);
    if (static_cast<double>(i) != value)
        throw ConfigError("config: [" + section + "] " + key + " is not an integer");
    return i;
}

uint64_t Config::get_u64(const std::string& section, const std::string& key,
                         uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key);
    char* end = nullptr;
    errno = 0;
    const unsigned long long value = std::strtoull(raw.c_str(), &end, 10);
    if (errno != 0 || end == raw.c_str() || *end != '\0')
        throw ConfigError("config: [" + section + "] " + key + " is not a u64: " + raw);
    return static_cast<uint64_t>(value);
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key);
    if (raw == "true" || raw == "1" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "no") return false;
    throw ConfigError("config: [" + section + "] " + key + " is not a bool: " + raw);
}

std::vector<double> Config::get_double_list(const std::string& section, const std::string& key,
                                            std::vector<double> fallback) const {
    if (!has(section, key)) return fallback;
    std::vector<double> out;
    for (const std::string& item : get_string_list(section, key)) {
        char* end = nullptr;
        errno = 0;
        const double value = std::strtod(item.c_str(), &end);
        if (errno != 0 || end == item.c_str() || *end != '\0')
            throw ConfigError("config: [" + section + "] " + key + " has a non-number: " + item);
        out.push_back(value);
    }
    return out;
}

std::vector<std::string> Config::get_string_list(const std::string& section,
                                                 const std::string& key,
                                                 std::vector<std::string> fallback) const {
    if (!has(section, key)) return fallback;
    std::vector<std::string> out;
    std::istringstream in(get_string(section, key));
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::string Config::dump() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [section, entries] : sections_) {
        if (!first) out << '\n';
        first = false;
        out << '[' << section << "]\n";
        for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
    }
    return out.str();
}

}  // namespace geoquad
