#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fcmppt {

// Flat declarative config document: "[section]" headers followed by
// "key = value" lines, '#' comments. Values may hold several
// whitespace-separated numbers (vectors, schedules).
class ConfigDoc {
public:
    static ConfigDoc parse_file(const std::string& path);
    static ConfigDoc parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;

    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;

    long get_int(const std::string& section, const std::string& key) const;
    long get_int(const std::string& section, const std::string& key, long fallback) const;

    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;

    // Flat "t0 v0 t1 v1 ..." list -> ordered (time, value) pairs.
    std::vector<std::pair<double, double>> get_schedule(const std::string& section,
                                                        const std::string& key) const;

    // Directory of the source file, used to resolve relative paths such as
    // the rule-table location. Empty for parse_string documents.
    const std::string& dir() const { return dir_; }

    // Resolves a possibly-relative path against dir().
    std::string resolve_path(const std::string& path) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    std::string dir_;
};

} // namespace fcmppt
