#pragma once

// Format-neutral report documents. Tables hold named columns; every cell is a computed
// value (optionally paired with a published value), an embedded reference constant,
// text, or an explicitly absent value. Renderers are deterministic: the same document
// always yields byte-identical output.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chshlab::report {

inline constexpr std::string_view kSchemaVersion = "1";

enum class Format { csv, json, markdown };

/// Parses "csv" | "json" | "markdown" (also "md"). Throws UsageError otherwise.
Format parse_format(std::string_view name);
std::string_view format_name(Format format);

class Cell {
public:
    enum class Kind { computed, reference, text, absent };

    static Cell computed(double value);
    static Cell compared(double value, double published);
    static Cell compared(double value, std::optional<double> published);
    static Cell reference(double value);
    static Cell text(std::string value);
    static Cell absent();

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }
    const std::optional<double>& published() const noexcept { return published_; }
    std::optional<double> delta() const noexcept;
    const std::string& str() const noexcept { return text_; }

private:
    Kind kind_ = Kind::absent;
    double value_ = 0.0;
    std::optional<double> published_;
    std::string text_;
};

struct Row {
    std::string id;
    std::vector<Cell> cells;  // one per table column
};

struct Table {
    std::string id;
    std::string caption;
    std::vector<std::string> columns;
    std::vector<Row> rows;
    std::vector<std::string> notes;

    /// Appends a row; throws std::invalid_argument if the cell count does not match.
    void add_row(std::string row_id, std::vector<Cell> cells);
    bool column_has_published(std::size_t column) const;
};

struct Document {
    std::size_t grid_states = 0;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> notes;
    std::vector<Table> tables;
};

struct CsvFile {
    std::string name;  // "<table id>.csv"
    std::string content;
};

/// Shortest round-trip decimal form, "." separator, independent of locale.
std::string format_number(double value);

std::string render_json(const Document& doc);
std::vector<CsvFile> render_csv_files(const Document& doc);
/// All CSV tables in one stream, separated by a blank line.
std::string render_csv(const Document& doc);
std::string render_markdown(const Document& doc);

std::string render(const Document& doc, Format format);

}  // namespace chshlab::report
