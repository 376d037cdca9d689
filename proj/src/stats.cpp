#include "chshlab/stats.hpp"

#include "chshlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

namespace chshlab::stats {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_finite(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) {
        return false;
    }
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    if (*begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw SchemaError("CSV header has no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::string join_keys(const std::vector<std::string>& keys) {
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i > 0) {
            out += '/';
        }
        out += keys[i];
    }
    return out.empty() ? "all" : out;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

IngestResult ingest_csv(std::istream& in, const CsvSchema& schema, bool strict) {
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaError("CSV input has no header row");
    }
    std::vector<std::string> header = split_csv_line(line);
    for (std::string& name : header) {
        name = trim(name);
    }
    std::vector<std::size_t> key_columns;
    for (const std::string& name : schema.group_columns) {
        key_columns.push_back(column_index(header, name));
    }
    const std::size_t value_column = column_index(header, schema.value_column);

    IngestResult result;
    result.group_columns = schema.group_columns;
    std::size_t line_no = 1;
    const auto reject = [&](std::string message) {
        if (strict) {
            throw RowError(line_no, message);
        }
        result.diagnostics.push_back({line_no, std::move(message)});
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            reject("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
            continue;
        }
        Record record;
        if (!parse_finite(fields[value_column], record.value)) {
            reject("non-numeric value '" + fields[value_column] + "' in column '" + schema.value_column + "'");
            continue;
        }
        for (const std::size_t c : key_columns) {
            record.group_keys.push_back(trim(fields[c]));
        }
        result.records.push_back(std::move(record));
    }
    return result;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw DomainError("median of an empty set");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<GroupSummary> group_summary(const std::vector<Record>& records) {
    if (records.empty()) {
        throw DomainError("no records to summarize");
    }
    std::map<std::vector<std::string>, std::vector<double>> groups;
    for (const Record& r : records) {
        groups[r.group_keys].push_back(r.value);
    }
    std::vector<GroupSummary> out;
    out.reserve(groups.size());
    for (auto& [keys, values] : groups) {
        GroupSummary g;
        g.keys = keys;
        g.n = values.size();
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        g.mean = sum / static_cast<double>(g.n);
        if (g.n > 1) {
            double ss = 0.0;
            for (double v : values) {
                ss += (v - g.mean) * (v - g.mean);
            }
            g.std_dev = std::sqrt(ss / static_cast<double>(g.n - 1));
        }
        g.median = median(std::move(values));
        out.push_back(std::move(g));
    }
    return out;
}

const std::vector<ReferenceRow>& reference_table() {
    static const std::vector<ReferenceRow> rows = {
        {"18-39", "men", 5285, 196.50, 42.50, 179.60},   {"18-39", "women", 4884, 227.91, 42.76, 212.38},
        {"40-44", "men", 2241, 203.00, 39.15, 189.28},   {"40-44", "women", 1878, 230.76, 37.57, 219.21},
        {"45-49", "men", 2252, 210.26, 37.09, 198.97},   {"45-49", "women", 1817, 235.87, 33.18, 227.17},
        {"50-54", "men", 2052, 221.32, 40.38, 207.39},   {"50-54", "women", 1207, 244.61, 35.03, 233.92},
        {"55-59", "men", 1422, 228.29, 37.27, 217.36},   {"55-59", "women", 815, 253.28, 35.01, 244.13},
        {"60-64", "men", 1110, 239.82, 36.79, 229.95},   {"60-64", "women", 527, 258.9, 31.50, 252.77},
        {"65-69", "men", 549, 252.95, 37.06, 242.58},    {"65-69", "women", 221, 272.10, 30.34, 267.75},
    };
    return rows;
}

report::Document summary_document(const IngestResult& ingest, const std::vector<GroupSummary>& groups) {
    using report::Cell;
    report::Document doc;
    doc.metadata = {
        {"std_dev", "sample standard deviation (n - 1 denominator)"},
        {"median", "even n: mean of the two central values"},
        {"records", std::to_string(ingest.records.size())},
        {"diagnostics", std::to_string(ingest.diagnostics.size())},
    };

    report::Table summary{"group_summary", "Descriptive statistics by group", ingest.group_columns, {}, {}};
    for (const char* column : {"n", "mean", "std_dev", "median"}) {
        summary.columns.emplace_back(column);
    }
    for (const GroupSummary& g : groups) {
        std::vector<Cell> cells;
        for (const std::string& key : g.keys) {
            cells.push_back(Cell::text(key));
        }
        cells.push_back(Cell::computed(static_cast<double>(g.n)));
        cells.push_back(Cell::computed(g.mean));
        cells.push_back(Cell::computed(g.std_dev));
        cells.push_back(Cell::computed(g.median));
        summary.add_row(join_keys(g.keys), std::move(cells));
    }

    report::Table reference{"reference_completion_times",
                            "Statistical analysis of the completion time of highly conditioned athletes "
                            "(published reference values, minutes)",
                            {"age_group", "sex", "n", "mean", "std_dev", "median"},
                            {},
                            {"Display only; the raw dataset is not shipped."}};
    for (const ReferenceRow& r : reference_table()) {
        reference.add_row(r.age_group + "/" + r.sex,
                          {Cell::text(r.age_group), Cell::text(r.sex), Cell::reference(static_cast<double>(r.n)),
                           Cell::reference(r.mean), Cell::reference(r.std_dev), Cell::reference(r.median)});
    }

    report::Table diagnostics{"diagnostics", "Rejected input rows", {"line", "message"}, {}, {}};
    for (const RowDiagnostic& d : ingest.diagnostics) {
        diagnostics.add_row("line" + std::to_string(d.line),
                            {Cell::computed(static_cast<double>(d.line)), Cell::text(d.message)});
    }

    doc.tables.push_back(std::move(summary));
    doc.tables.push_back(std::move(reference));
    doc.tables.push_back(std::move(diagnostics));
    return doc;
}

}  // namespace chshlab::stats
