// dataset.cpp — deterministic CSV / JSON serialization
#include "polab/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polab/config.hpp"

namespace polab {

void Dataset::add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

std::vector<Cell>& Dataset::add_row() {
    rows.emplace_back();
    return rows.back();
}

std::string format_number(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string csv_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::number: return format_number(c.value);
        case Cell::Kind::text: return csv_escape(c.label);
        case Cell::Kind::empty: return "";
    }
    return "";
}

std::string json_escape(const std::string& s) {
    std::ostringstream out;
    out << '"';
    for (char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            case '\r': out << "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
                    out << buffer;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
    return out.str();
}

std::string json_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::number:
            return std::isfinite(c.value) ? format_number(c.value) : "null";
        case Cell::Kind::text: return json_escape(c.label);
        case Cell::Kind::empty: return "null";
    }
    return "null";
}

}  // namespace

std::string to_csv(const Dataset& d) {
    std::ostringstream out;
    for (const auto& [key, value] : d.metadata) out << "# " << key << " = " << value << "\n";
    for (std::size_t j = 0; j < d.columns.size(); ++j) {
        if (j) out << ",";
        out << csv_escape(d.columns[j]);
    }
    out << "\n";
    for (const auto& row : d.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ",";
            out << csv_cell(row[j]);
        }
        out << "\n";
    }
    return out.str();
}

std::string to_json(const Dataset& d) {
    std::ostringstream out;
    out << "{\n  \"metadata\": {";
    for (std::size_t k = 0; k < d.metadata.size(); ++k) {
        out << (k ? ",\n    " : "\n    ") << json_escape(d.metadata[k].first) << ": "
            << json_escape(d.metadata[k].second);
    }
    out << "\n  },\n  \"columns\": [";
    for (std::size_t j = 0; j < d.columns.size(); ++j)
        out << (j ? ", " : "") << json_escape(d.columns[j]);
    out << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
        out << (r ? ",\n    " : "\n    ") << "[";
        for (std::size_t j = 0; j < d.rows[r].size(); ++j)
            out << (j ? ", " : "") << json_cell(d.rows[r][j]);
        out << "]";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

void write_dataset(const Dataset& d, const std::string& path, const std::string& format) {
    const std::string body = format == "json" ? to_json(d) : to_csv(d);
    if (path.empty()) {
        std::cout << body;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << body;
    if (!out) throw ConfigError("failed while writing output file '" + path + "'");
}

}  // namespace polab
