#include "shp/cli/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace shp::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
        if (!ok) return false;
    }
    return true;
}

std::optional<double> parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) return std::nullopt;
    return v;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    Config c;
    c.source_ = source;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(number) + ": ";
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) throw ConfigError(where + "invalid key '" + key + "'");
        if (value.empty()) throw ConfigError(where + "key '" + key + "' has an empty value");
        if (c.values_.count(key)) {
            throw ConfigError(where + "duplicate key '" + key + "' (first set on line " + std::to_string(c.lines_[key]) + ")");
        }
        c.values_[key] = value;
        c.lines_[key] = number;
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in, path);
}

void Config::fail(const std::string& key, const std::string& message) const {
    std::ostringstream os;
    const auto it = lines_.find(key);
    if (it != lines_.end()) {
        os << source_ << ":" << it->second << ": ";
    } else if (!source_.empty()) {
        os << source_ << ": ";
    }
    os << "key '" << key << "': " << message;
    throw ConfigError(os.str());
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::optional<double> Config::get_optional_double(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    const auto v = parse_double(it->second);
    if (!v) fail(key, "expected a number, got '" + it->second + "'");
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    return get_optional_double(key).value_or(fallback);
}

std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "expected a non-negative integer, got '" + s + "'");
    return v;
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
    return static_cast<std::size_t>(get_uint64(key, fallback));
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    std::vector<std::string> out;
    const auto it = values_.find(key);
    if (it == values_.end()) return out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(key, "empty list element");
        out.push_back(item);
    }
    return out;
}

std::vector<double> Config::numbers(const std::string& key, std::size_t expected) const {
    std::vector<double> out;
    for (const std::string& item : get_list(key)) {
        const auto v = parse_double(item);
        if (!v) fail(key, "expected a number, got '" + item + "'");
        out.push_back(*v);
    }
    if (out.size() != expected) fail(key, "expected " + std::to_string(expected) + " comma-separated numbers");
    return out;
}

Eigen::Vector3d Config::get_vector3(const std::string& key, const Eigen::Vector3d& fallback) const {
    if (!has(key)) return fallback;
    const auto v = numbers(key, 3);
    return {v[0], v[1], v[2]};
}

FourVector Config::get_four_vector(const std::string& key, const FourVector& fallback) const {
    if (!has(key)) return fallback;
    const auto v = numbers(key, 4);
    return {v[0], v[1], v[2], v[3]};
}

void Config::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : values_) {
        if (!allowed.count(key)) fail(key, "unknown key");
    }
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = value;
    lines_.erase(key);
}

}  // namespace shp::cli
