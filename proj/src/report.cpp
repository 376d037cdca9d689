#include "chshlab/report.hpp"

#include "chshlab/errors.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chshlab::report {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
    if (value == 0.0) {
        value = 0.0;  // drop the sign of -0.0
    }
    char buf[64];
    const auto result = precision < 0 ? std::to_chars(buf, buf + sizeof buf, value, fmt)
                                      : std::to_chars(buf, buf + sizeof buf, value, fmt, precision);
    return std::string(buf, result.ptr);
}

std::string format_markdown_number(double value) {
    if (std::fabs(value) < 1e-12) {
        return "0";
    }
    return to_chars_string(value, std::chars_format::general, 6);
}

std::string escape_csv(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

std::string escape_markdown(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

ordered_json json_number(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return value == 0.0 ? 0.0 : value;
}

ordered_json table_to_json(const Table& table) {
    ordered_json t;
    t["id"] = table.id;
    t["caption"] = table.caption;
    t["columns"] = table.columns;
    if (!table.notes.empty()) {
        t["notes"] = table.notes;
    }
    ordered_json rows = ordered_json::array();
    for (const Row& row : table.rows) {
        ordered_json computed = ordered_json::object();
        ordered_json published = ordered_json::object();
        ordered_json delta = ordered_json::object();
        ordered_json reference = ordered_json::object();
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
            const std::string& name = table.columns[c];
            const Cell& cell = row.cells[c];
            switch (cell.kind()) {
                case Cell::Kind::computed:
                    computed[name] = json_number(cell.value());
                    if (cell.published()) {
                        published[name] = json_number(*cell.published());
                        delta[name] = json_number(*cell.delta());
                    }
                    break;
                case Cell::Kind::reference:
                    reference[name] = json_number(cell.value());
                    break;
                case Cell::Kind::text:
                    computed[name] = cell.str();
                    break;
                case Cell::Kind::absent:
                    computed[name] = nullptr;
                    break;
            }
        }
        ordered_json r;
        r["id"] = row.id;
        r["computed"] = std::move(computed);
        if (!published.empty()) {
            r["paper_value"] = std::move(published);
            r["delta"] = std::move(delta);
        }
        if (!reference.empty()) {
            r["reference"] = std::move(reference);
        }
        rows.push_back(std::move(r));
    }
    t["rows"] = std::move(rows);
    return t;
}

std::string table_to_csv(const Table& table) {
    std::ostringstream out;
    std::vector<bool> with_published(table.columns.size());
    out << "id";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        with_published[c] = table.column_has_published(c);
        out << ',' << escape_csv(table.columns[c]);
        if (with_published[c]) {
            out << ',' << escape_csv(table.columns[c] + "_paper") << ','
                << escape_csv(table.columns[c] + "_delta");
        }
    }
    out << '\n';
    for (const Row& row : table.rows) {
        out << escape_csv(row.id);
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
            const Cell& cell = row.cells[c];
            out << ',';
            switch (cell.kind()) {
                case Cell::Kind::computed:
                case Cell::Kind::reference:
                    out << format_number(cell.value());
                    break;
                case Cell::Kind::text:
                    out << escape_csv(cell.str());
                    break;
                case Cell::Kind::absent:
                    break;
            }
            if (with_published[c]) {
                out << ',';
                if (cell.published()) {
                    out << format_number(*cell.published());
                }
                out << ',';
                if (auto d = cell.delta()) {
                    out << format_number(*d);
                }
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string markdown_cell(const Cell& cell) {
    switch (cell.kind()) {
        case Cell::Kind::computed: {
            std::string s = format_markdown_number(cell.value());
            if (cell.published()) {
                s += " (paper " + format_number(*cell.published()) + ", delta " +
                     format_markdown_number(*cell.delta()) + ")";
            }
            return s;
        }
        case Cell::Kind::reference:
            return format_number(cell.value());
        case Cell::Kind::text:
            return escape_markdown(cell.str());
        case Cell::Kind::absent:
            return "-";
    }
    return {};
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "json") {
        return Format::json;
    }
    if (name == "markdown" || name == "md") {
        return Format::markdown;
    }
    throw UsageError("unknown output format '" + std::string(name) + "' (expected csv, json or markdown)");
}

std::string_view format_name(Format format) {
    switch (format) {
        case Format::csv:
            return "csv";
        case Format::json:
            return "json";
        case Format::markdown:
            return "markdown";
    }
    return "json";
}

Cell Cell::computed(double value) {
    Cell c;
    c.kind_ = Kind::computed;
    c.value_ = value;
    return c;
}

Cell Cell::compared(double value, double published) {
    Cell c = computed(value);
    c.published_ = published;
    return c;
}

Cell Cell::compared(double value, std::optional<double> published) {
    Cell c = computed(value);
    c.published_ = published;
    return c;
}

Cell Cell::reference(double value) {
    Cell c;
    c.kind_ = Kind::reference;
    c.value_ = value;
    return c;
}

Cell Cell::text(std::string value) {
    Cell c;
    c.kind_ = Kind::text;
    c.text_ = std::move(value);
    return c;
}

Cell Cell::absent() { return Cell{}; }

std::optional<double> Cell::delta() const noexcept {
    if (kind_ != Kind::computed || !published_) {
        return std::nullopt;
    }
    return value_ - *published_;
}

void Table::add_row(std::string row_id, std::vector<Cell> cells) {
    if (cells.size() != columns.size()) {
        throw std::invalid_argument("table '" + id + "': row '" + row_id + "' has " +
                                    std::to_string(cells.size()) + " cells, expected " +
                                    std::to_string(columns.size()));
    }
    rows.push_back({std::move(row_id), std::move(cells)});
}

bool Table::column_has_published(std::size_t column) const {
    for (const Row& row : rows) {
        if (row.cells[column].published()) {
            return true;
        }
    }
    return false;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    return to_chars_string(value, std::chars_format::general, -1);
}

std::string render_json(const Document& doc) {
    ordered_json root;
    root["schema_version"] = std::string(kSchemaVersion);
    root["grid"] = {{"n_states", doc.grid_states}};
    ordered_json metadata = ordered_json::object();
    for (const auto& [key, value] : doc.metadata) {
        metadata[key] = value;
    }
    root["metadata"] = std::move(metadata);
    root["notes"] = doc.notes;
    ordered_json tables = ordered_json::array();
    for (const Table& table : doc.tables) {
        tables.push_back(table_to_json(table));
    }
    root["tables"] = std::move(tables);
    return root.dump(2) + "\n";
}

std::vector<CsvFile> render_csv_files(const Document& doc) {
    std::vector<CsvFile> files;
    files.reserve(doc.tables.size());
    for (const Table& table : doc.tables) {
        files.push_back({table.id + ".csv", table_to_csv(table)});
    }
    return files;
}

std::string render_csv(const Document& doc) {
    std::string out;
    bool first = true;
    for (const CsvFile& file : render_csv_files(doc)) {
        if (!first) {
            out += '\n';
        }
        first = false;
        out += file.content;
    }
    return out;
}

std::string render_markdown(const Document& doc) {
    std::ostringstream out;
    out << "# Report\n\n";
    out << "- schema_version: " << kSchemaVersion << "\n";
    out << "- grid n_states: " << doc.grid_states << "\n";
    for (const auto& [key, value] : doc.metadata) {
        out << "- " << key << ": " << value << "\n";
    }
    for (const std::string& note : doc.notes) {
        out << "\n> " << escape_markdown(note) << "\n";
    }
    for (const Table& table : doc.tables) {
        out << "\n## " << escape_markdown(table.caption) << "\n\n";
        out << "Table id: `" << table.id << "`\n";
        for (const std::string& note : table.notes) {
            out << "\n> " << escape_markdown(note) << "\n";
        }
        out << "\n| id |";
        for (const std::string& column : table.columns) {
            out << ' ' << escape_markdown(column) << " |";
        }
        out << "\n|---|";
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << "---|";
        }
        out << '\n';
        for (const Row& row : table.rows) {
            out << "| " << escape_markdown(row.id) << " |";
            for (const Cell& cell : row.cells) {
                out << ' ' << markdown_cell(cell) << " |";
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string render(const Document& doc, Format format) {
    switch (format) {
        case Format::csv:
            return render_csv(doc);
        case Format::json:
            return render_json(doc);
        case Format::markdown:
            return render_markdown(doc);
    }
    throw UsageError("unknown output format");
}

}  // namespace chshlab::report
