#pragma once

#include <map>
#include <string>
#include <vector>

namespace rieszlab::cli {

/// Line-oriented key-value configuration with [section] headers. Keys are
/// addressed as "section.key"; repeated keys accumulate (the last one wins
/// for scalar reads). '#' starts a comment.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int_or(const std::string& key, int fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list_or(const std::string& key, std::vector<double> fallback) const;

    void set(const std::string& key, const std::string& value);
    const std::map<std::string, std::vector<std::string>>& entries() const { return kv_; }

    /// FNV-1a over the sorted canonical "key=value" lines; stable under key
    /// reordering in the source text.
    std::string canonical_hash() const;

private:
    std::map<std::string, std::vector<std::string>> kv_;
};

}  // namespace rieszlab::cli
