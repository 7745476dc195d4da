// dataset.hpp — deterministic tabular results with a comment-style metadata header
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace polab {

inline constexpr const char* kToolVersion = "1.0.0";

/// One table cell: a number (formatted to 12 significant digits on output),
/// a text label, or empty (columns that do not apply to a row).
struct Cell {
    enum class Kind { number, text, empty };
    Kind kind = Kind::empty;
    double value = 0.0;
    std::string label;

    static Cell num(double v) { return {Kind::number, v, {}}; }
    static Cell text(std::string s) { return {Kind::text, 0.0, std::move(s)}; }
    static Cell none() { return {}; }
};

/// Column-named rows plus an ordered metadata block.  Serialization is fully
/// deterministic: fixed numeric formatting, no timestamps, insertion order.
struct Dataset {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_meta(std::string key, std::string value);
    std::vector<Cell>& add_row();
};

/// Shortest text with 12 significant digits that round-trips the value ("%.12g").
std::string format_number(double v);

/// '#'-prefixed "key = value" metadata lines, a column-name row, then data
/// rows; cells containing commas, quotes or newlines are double-quoted.
std::string to_csv(const Dataset& d);

/// {"metadata": {...}, "columns": [...], "rows": [[...]]} with numbers
/// rendered through the same 12-digit formatting; empty cells become null.
std::string to_json(const Dataset& d);

/// Serializes in the requested format ("csv" | "json") and writes to the path,
/// or to stdout when the path is empty.
void write_dataset(const Dataset& d, const std::string& path, const std::string& format);

}  // namespace polab
