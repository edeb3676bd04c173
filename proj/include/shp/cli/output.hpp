#pragma once

// Deterministic CSV and JSON emission. CSV numbers use 17 significant
// digits; JSON numbers use the shortest text that reads back to the same
// double. Non-finite values become "inf"/"-inf"/"nan" in CSV and null in JSON.

#include <string>
#include <vector>

#include "json.hpp"

namespace shp::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

enum class Format { Csv, Json };

Format parse_format(const std::string& text);

std::string format_number(double v);
Json json_number(double v);

/// Object with schema_version and command set first.
Json json_document(const std::string& command);
std::string dump(const Json& j);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    void add_numbers(const std::vector<double>& values);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    /// Header line plus rows, LF terminated. Cells containing a comma, quote
    /// or newline are quoted.
    std::string str() const;
    /// {"columns": [...], "rows": [[...], ...]} with numeric cells as numbers.
    Json to_json() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace shp::cli
