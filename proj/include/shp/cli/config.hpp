#pragma once

// Flat configuration files:
//
//   # comment
//   key = value   # trailing comment
//
// Keys are [A-Za-z0-9_.]+, values run to the end of the line (or to an
// unquoted '#') with surrounding blanks trimmed. Vectors are comma
// separated. Duplicate keys are errors.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shp/errors.hpp"
#include "shp/minkowski.hpp"

namespace shp::cli {

/// Malformed or inconsistent configuration. Maps to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

class Config {
public:
    /// Throws ConfigError with "source:line:" context on malformed lines.
    static Config parse(std::istream& in, const std::string& source);
    /// Throws ConfigError when the file cannot be opened.
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& source() const { return source_; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
    std::optional<double> get_optional_double(const std::string& key) const;
    Eigen::Vector3d get_vector3(const std::string& key, const Eigen::Vector3d& fallback) const;
    FourVector get_four_vector(const std::string& key, const FourVector& fallback) const;
    std::vector<std::string> get_list(const std::string& key) const;

    /// Throws ConfigError naming the first key not in `allowed`.
    void require_known(const std::set<std::string>& allowed) const;

    /// Sets a value as if it had been read from the file (used for flag overrides).
    void set(const std::string& key, const std::string& value);

private:
    [[noreturn]] void fail(const std::string& key, const std::string& message) const;
    std::vector<double> numbers(const std::string& key, std::size_t expected) const;

    std::string source_;
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
};

}  // namespace shp::cli
