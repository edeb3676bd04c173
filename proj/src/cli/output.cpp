#include "shp/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "shp/cli/config.hpp"

namespace shp::cli {

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw ConfigError("unknown format '" + text + "' (expected csv or json)");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json json_number(double v) { return std::isfinite(v) ? Json(v + 0.0) : Json(nullptr); }  // + 0.0 folds -0 to 0

Json json_document(const std::string& command) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("csv row width does not match header");
    rows_.push_back(std::move(cells));
}

void CsvTable::add_numbers(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(std::move(cells));
}

namespace {

std::string escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += escape(cells[i]);
    }
    out += '\n';
}

Json cell_json(const std::string& cell) {
    if (cell == "nan" || cell == "inf" || cell == "-inf") return nullptr;
    if (cell == "true") return true;
    if (cell == "false") return false;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (!cell.empty() && end == cell.c_str() + cell.size()) return v;
    return cell;
}

}  // namespace

std::string CsvTable::str() const {
    std::string out;
    append_line(out, header_);
    for (const auto& row : rows_) append_line(out, row);
    return out;
}

Json CsvTable::to_json() const {
    Json j = Json::object();
    j["columns"] = header_;
    Json rows = Json::array();
    for (const auto& row : rows_) {
        Json r = Json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace shp::cli
