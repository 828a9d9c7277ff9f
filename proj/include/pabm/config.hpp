#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pabm {

/// Flat `key = value` text config. '#' starts a comment; blank lines ignored.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    /// Throws ParseError naming the key when absent.
    const std::string& require(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;

    long long require_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    double get_double(const std::string& key, double fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Splits on `sep` and trims whitespace; empty items are dropped.
std::vector<std::string> split_list(const std::string& s, char sep);
std::string trim(const std::string& s);

long long parse_int(const std::string& s, const std::string& what);
double parse_double(const std::string& s, const std::string& what);

}  // namespace pabm
