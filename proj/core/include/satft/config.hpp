#ifndef SATFT_CONFIG_HPP
#define SATFT_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>

namespace satft {

/// Flat key = value configuration file. '#' starts a comment, blank lines
/// are ignored, keys are namespaced with dots (clock.*, link.*, ...).
/// Unknown keys are rejected so a typo cannot silently fall back to a
/// default.
class Config {
public:
    Config() = default;

    static Config parse(std::istream& in, const std::string& name = "<stream>");
    static Config parse_file(const std::filesystem::path& path);

    bool has(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    /// Required variants; throw if the key is absent.
    double require_double(const std::string& key) const;
    std::string require_string(const std::string& key) const;

    /// Throws InvalidSpecError naming the first key not in `allowed`.
    /// Prefixes ending in '.' allow a whole namespace (e.g. "clock.").
    void restrict_keys(const std::set<std::string>& allowed) const;

    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::string name_ = "<none>";
    std::map<std::string, std::string> entries_;
};

} // namespace satft

#endif
