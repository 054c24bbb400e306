#include "fcmppt/config.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace fcmppt {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& where) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw config_error("bad number '" + text + "' in " + where);
    }
    return v;
}

} // namespace

ConfigDoc ConfigDoc::parse_string(const std::string& text) {
    ConfigDoc doc;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw config_error("malformed section header at line " +
                                   std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            doc.sections_[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("expected 'key = value' at line " + std::to_string(line_no));
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw config_error("empty key at line " + std::to_string(line_no));
        }
        doc.sections_[section][key] = value;
    }
    return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
    ConfigDoc doc = parse_string(read_file(path));
    doc.dir_ = std::filesystem::path(path).parent_path().string();
    return doc;
}

bool ConfigDoc::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigDoc::get_string(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s != sections_.end()) {
        auto k = s->second.find(key);
        if (k != s->second.end()) return k->second;
    }
    throw config_error("missing config key [" + section + "] " + key);
}

std::string ConfigDoc::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigDoc::get_double(const std::string& section, const std::string& key) const {
    return parse_double(get_string(section, key), "[" + section + "] " + key);
}

double ConfigDoc::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long ConfigDoc::get_int(const std::string& section, const std::string& key) const {
    double v = get_double(section, key);
    long i = static_cast<long>(v);
    if (static_cast<double>(i) != v) {
        throw config_error("expected integer for [" + section + "] " + key);
    }
    return i;
}

long ConfigDoc::get_int(const std::string& section, const std::string& key,
                        long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> ConfigDoc::get_doubles(const std::string& section,
                                           const std::string& key) const {
    std::istringstream in(get_string(section, key));
    std::vector<double> values;
    std::string token;
    while (in >> token) {
        values.push_back(parse_double(token, "[" + section + "] " + key));
    }
    if (values.empty()) {
        throw config_error("empty value list for [" + section + "] " + key);
    }
    return values;
}

std::vector<std::pair<double, double>> ConfigDoc::get_schedule(const std::string& section,
                                                               const std::string& key) const {
    std::vector<double> flat = get_doubles(section, key);
    if (flat.size() % 2 != 0) {
        throw config_error("schedule [" + section + "] " + key +
                           " needs an even count of numbers (t v pairs)");
    }
    std::vector<std::pair<double, double>> points;
    points.reserve(flat.size() / 2);
    for (std::size_t i = 0; i < flat.size(); i += 2) {
        points.emplace_back(flat[i], flat[i + 1]);
    }
    return points;
}

std::string ConfigDoc::resolve_path(const std::string& path) const {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.is_absolute() || dir_.empty()) return path;
    return (fs::path(dir_) / p).string();
}

} // namespace fcmppt
