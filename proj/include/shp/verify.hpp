#pragma once

// Registry of seeded identity checks across all modules. Each record holds
// the largest deviation seen over its samples and passes iff that deviation
// is within the record's tolerance.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shp::verify {

struct IdentityRecord {
    std::string id;
    std::string relation;
    std::size_t samples = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// Reported for comparison only; does not affect the suite result.
    bool informational = false;
    std::vector<std::string> convention_flags;
};

struct SuiteReport {
    std::string name;
    std::vector<IdentityRecord> records;
    bool pass() const;
    std::size_t failures() const;
};

struct ConventionFlag {
    std::string id;
    std::string description;
};

/// Documented sign and convention choices that differ from a literal
/// reading of the underlying formulas.
const std::vector<ConventionFlag>& convention_flags();

struct Options {
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    /// When set, replaces every tolerance.
    std::optional<double> tolerance;
    /// Empty selects every suite.
    std::vector<std::string> suites;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<SuiteReport> suites;
    bool pass() const;
    std::size_t failures() const;
};

const std::vector<std::string>& suite_names();

/// Throws InvalidArgument on an unknown suite name, zero samples or a
/// non-positive tolerance.
VerificationReport run(const Options& options);
SuiteReport run_suite(const std::string& name, const Options& options);

}  // namespace shp::verify
