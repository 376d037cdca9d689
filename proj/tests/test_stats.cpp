#include "chshlab/errors.hpp"
#include "chshlab/stats.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

using namespace chshlab;
using namespace chshlab::stats;

namespace {

IngestResult ingest(const std::string& text, const CsvSchema& schema, bool strict = false) {
    std::istringstream in(text);
    return ingest_csv(in, schema, strict);
}

const CsvSchema kSchema{{"age", "sex"}, "minutes"};

}  // namespace

TEST_CASE("median") {
    std::vector<double> v(101);
    std::iota(v.begin(), v.end(), 1.0);
    CHECK(median(v) == 51.0);
    CHECK(median({1, 2, 3, 4}) == 2.5);
    CHECK(median({7}) == 7.0);
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK_THROWS_AS(median({}), DomainError);
}

TEST_CASE("header only yields an empty result") {
    const IngestResult r = ingest("age,sex,minutes\n", kSchema);
    CHECK(r.records.empty());
    CHECK(r.diagnostics.empty());
    CHECK_THROWS_AS(group_summary(r.records), DomainError);
}

TEST_CASE("missing header or column is a schema error") {
    CHECK_THROWS_AS(ingest("", kSchema), SchemaError);
    CHECK_THROWS_AS(ingest("age,minutes\n1,2\n", kSchema), SchemaError);
}

TEST_CASE("malformed rows become diagnostics") {
    const std::string csv = "age,sex,minutes\n18-39,men,200\n18-39,men,abc\n18-39,women,230\n\n40-44,men,210\n";
    const IngestResult r = ingest(csv, kSchema);
    CHECK(r.records.size() == 3);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].line == 3);
    CHECK_THROWS_AS(ingest(csv, kSchema, true), RowError);
    try {
        ingest(csv, kSchema, true);
    } catch (const RowError& e) {
        CHECK(e.line() == 3);
    }
    const IngestResult short_row = ingest("age,sex,minutes\n18-39,men\n", kSchema);
    CHECK(short_row.records.empty());
    CHECK(short_row.diagnostics.size() == 1);
}

TEST_CASE("quoted fields") {
    const auto f = split_csv_line("a,\"b,c\",\"d\"\"e\"");
    REQUIRE(f.size() == 3);
    CHECK(f[1] == "b,c");
    CHECK(f[2] == "d\"e");
    CHECK(split_csv_line("x,").size() == 2);
}

TEST_CASE("group summary") {
    const IngestResult r =
        ingest("age,sex,minutes\nb,men,1\na,men,2\na,men,4\na,men,6\nb,men,3\nc,women,5\n", kSchema);
    const auto groups = group_summary(r.records);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].keys == std::vector<std::string>{"a", "men"});
    CHECK(groups[0].n == 3);
    CHECK(groups[0].mean == 4.0);
    CHECK(groups[0].std_dev == doctest::Approx(2.0));
    CHECK(groups[0].median == 4.0);
    CHECK(groups[1].median == 2.0);
    CHECK(groups[2].n == 1);
    CHECK(groups[2].std_dev == 0.0);
}

TEST_CASE("reference table") {
    const auto& rows = reference_table();
    REQUIRE(rows.size() == 14);
    std::size_t men = 0;
    for (const auto& r : rows) {
        CHECK(r.median <= r.mean);
        if (r.sex == "men") men += r.n;
    }
    CHECK(men == 14911);
    CHECK(rows[0].mean == 196.50);
}

TEST_CASE("property: shift invariance, counts and median bounds") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> size(1, 60);
    std::uniform_int_distribution<int> group(0, 3);
    std::normal_distribution<double> value(200.0, 40.0);
    std::uniform_real_distribution<double> shift(-500.0, 500.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = size(rng);
        std::vector<Record> base, moved;
        const double c = shift(rng);
        for (int i = 0; i < n; ++i) {
            const std::string key = std::to_string(group(rng));
            const double v = value(rng);
            base.push_back({{key}, v});
            moved.push_back({{key}, v + c});
        }
        const auto g0 = group_summary(base);
        const auto g1 = group_summary(moved);
        REQUIRE(g0.size() == g1.size());
        std::size_t total = 0;
        for (std::size_t i = 0; i < g0.size(); ++i) {
            total += g0[i].n;
            REQUIRE(std::abs(g1[i].mean - g0[i].mean - c) < 1e-9);
            REQUIRE(std::abs(g1[i].median - g0[i].median - c) < 1e-9);
            REQUIRE(std::abs(g1[i].std_dev - g0[i].std_dev) < 1e-9);
            std::vector<double> vals;
            for (const Record& r : base) {
                if (r.group_keys == g0[i].keys) vals.push_back(r.value);
            }
            const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
            REQUIRE(g0[i].median >= *lo);
            REQUIRE(g0[i].median <= *hi);
        }
        REQUIRE(total == static_cast<std::size_t>(n));
    }
}
