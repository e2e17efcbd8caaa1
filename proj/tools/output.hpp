#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hwasym::cli {

using Cell = std::variant<double, long, std::string, bool>;

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_cell(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return format_number(*d);
    if (auto l = std::get_if<long>(&c)) return std::to_string(*l);
    if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

// Non-finite numbers become null.
inline std::string json_cell(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_number(*d) : "null";
    if (auto l = std::get_if<long>(&c)) return std::to_string(*l);
    if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return nlohmann::json(std::get<std::string>(c)).dump();
}

struct Table {
    std::string schema;
    std::vector<std::pair<std::string, Cell>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }

    void write_csv(std::ostream& os) const {
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
            os << '\n';
        }
    }

    void write_json(std::ostream& os) const {
        os << "{\"schema\":" << nlohmann::json(schema).dump() << ",\"params\":{";
        for (std::size_t i = 0; i < params.size(); ++i)
            os << (i ? "," : "") << nlohmann::json(params[i].first).dump() << ':' << json_cell(params[i].second);
        os << "},\"rows\":[";
        for (std::size_t k = 0; k < rows.size(); ++k) {
            os << (k ? ",\n" : "\n") << '{';
            for (std::size_t i = 0; i < columns.size(); ++i)
                os << (i ? "," : "") << nlohmann::json(columns[i]).dump() << ':' << json_cell(rows[k][i]);
            os << '}';
        }
        os << "\n]}\n";
    }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json")
            write_json(os);
        else
            write_csv(os);
    }
};

} // namespace hwasym::cli
