#pragma once

// Grouped descriptive statistics over CSV records (count, mean, sample standard
// deviation, median per group).

#include "chshlab/report.hpp"

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace chshlab::stats {

struct Record {
    std::vector<std::string> group_keys;
    double value = 0.0;
};

/// Which CSV columns form the group key (in order) and which holds the value.
struct CsvSchema {
    std::vector<std::string> group_columns;
    std::string value_column;
};

struct RowDiagnostic {
    std::size_t line = 0;  // 1-based, header is line 1
    std::string message;
};

struct IngestResult {
    std::vector<std::string> group_columns;
    std::vector<Record> records;
    std::vector<RowDiagnostic> diagnostics;
};

/// Streams a CSV with a header row. Missing mapped columns throw SchemaError;
/// malformed rows become diagnostics, or a RowError when strict is set.
IngestResult ingest_csv(std::istream& in, const CsvSchema& schema, bool strict = false);

/// Splits one CSV line; double quotes delimit fields and "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line);

struct GroupSummary {
    std::vector<std::string> keys;
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // sample (n - 1) denominator; 0 for a single value
    double median = 0.0;   // mean of the two central values for even n
};

/// Summaries per distinct key, sorted by key. Throws DomainError on empty input.
std::vector<GroupSummary> group_summary(const std::vector<Record>& records);

double median(std::vector<double> values);

struct ReferenceRow {
    std::string age_group;
    std::string sex;
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double median = 0.0;
};

/// Published completion-time statistics by age group and sex (display only).
const std::vector<ReferenceRow>& reference_table();

report::Document summary_document(const IngestResult& ingest, const std::vector<GroupSummary>& groups);

}  // namespace chshlab::stats
