#include "satft/config.hpp"

#include <charconv>
#include <fstream>

#include "satft/csv.hpp"
#include "satft/errors.hpp"

namespace satft {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
}

} // namespace

Config Config::parse(std::istream& in, const std::string& name) {
    Config cfg;
    cfg.name_ = name;
    LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError(name + ": expected 'key = value'", reader.line_number());
        std::string key = trim(std::string_view(stripped).substr(0, eq));
        std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty())
            throw ParseError(name + ": empty key", reader.line_number());
        if (cfg.entries_.count(key))
            throw ParseError(name + ": duplicate key '" + key + "'", reader.line_number());
        cfg.entries_[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path.string());
    return parse(in, path.string());
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

double Config::get_double(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    double v = 0.0;
    const char* first = it->second.data();
    const char* last = first + it->second.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw InvalidSpecError(name_ + ": key '" + key + "' is not a number: '" + it->second +
                               "'");
    return v;
}

long Config::get_long(const std::string& key, long fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    long v = 0;
    const char* first = it->second.data();
    const char* last = first + it->second.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw InvalidSpecError(name_ + ": key '" + key + "' is not an integer: '" + it->second +
                               "'");
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw InvalidSpecError(name_ + ": key '" + key + "' is not a bool: '" + it->second + "'");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double Config::require_double(const std::string& key) const {
    if (!has(key)) throw InvalidSpecError(name_ + ": missing required key '" + key + "'");
    return get_double(key, 0.0);
}

std::string Config::require_string(const std::string& key) const {
    if (!has(key)) throw InvalidSpecError(name_ + ": missing required key '" + key + "'");
    return entries_.at(key);
}

void Config::restrict_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : entries_) {
        if (allowed.count(key)) continue;
        bool ok = false;
        for (const auto& a : allowed) {
            if (!a.empty() && a.back() == '.' && key.rfind(a, 0) == 0) {
                ok = true;
                break;
            }
        }
        if (!ok)
            throw InvalidSpecError(name_ + ": unknown config key '" + key + "'");
    }
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

} // namespace satft
