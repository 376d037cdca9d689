#include "chshlab/errors.hpp"
#include "chshlab/report.hpp"

#include "doctest.h"
#include "json.hpp"

#include <stdexcept>

using namespace chshlab;
using report::Cell;

namespace {

report::Document sample_document() {
    report::Document doc;
    doc.grid_states = 32;
    doc.metadata = {{"command", "demo"}, {"seed", "7"}};
    doc.notes = {"a note"};
    report::Table t{"demo", "Demo table", {"theta", "s", "label", "missing"}, {}, {"table note"}};
    t.add_row("r1", {Cell::computed(11.25), Cell::compared(2.3889551651687705, 2.3281), Cell::text("x,y"),
                     Cell::absent()});
    t.add_row("r2", {Cell::computed(-0.0), Cell::compared(1.0, std::nullopt), Cell::text("plain"),
                     Cell::reference(2.697)});
    doc.tables.push_back(t);
    return doc;
}

}  // namespace

TEST_CASE("format parsing") {
    CHECK(report::parse_format("csv") == report::Format::csv);
    CHECK(report::parse_format("json") == report::Format::json);
    CHECK(report::parse_format("markdown") == report::Format::markdown);
    CHECK(report::parse_format("md") == report::Format::markdown);
    CHECK_THROWS_AS(report::parse_format("xml"), UsageError);
    CHECK(report::format_name(report::Format::csv) == "csv");
}

TEST_CASE("number formatting is shortest round-trip") {
    CHECK(report::format_number(2.697) == "2.697");
    CHECK(report::format_number(-0.0) == "0");
    CHECK(report::format_number(0.1 + 0.2) == "0.30000000000000004");
    CHECK(report::format_number(1e-20) == "1e-20");
}

TEST_CASE("cells") {
    const Cell c = Cell::compared(2.5, 2.0);
    CHECK(c.delta() == 0.5);
    CHECK_FALSE(Cell::computed(1.0).delta().has_value());
    CHECK_FALSE(Cell::compared(1.0, std::nullopt).published().has_value());
    CHECK(Cell::absent().kind() == Cell::Kind::absent);
}

TEST_CASE("rows must match the column count") {
    report::Table t{"t", "", {"a", "b"}, {}, {}};
    CHECK_THROWS_AS(t.add_row("r", {Cell::computed(1)}), std::invalid_argument);
}

TEST_CASE("json structure") {
    const auto j = nlohmann::json::parse(report::render_json(sample_document()));
    CHECK(j["schema_version"] == "1");
    CHECK(j["grid"]["n_states"] == 32);
    CHECK(j["metadata"]["seed"] == "7");
    const auto& row = j["tables"][0]["rows"][0];
    CHECK(row["id"] == "r1");
    CHECK(row["computed"]["theta"] == 11.25);
    CHECK(row["paper_value"]["s"] == 2.3281);
    CHECK(row["delta"]["s"].get<double>() == doctest::Approx(2.3889551651687705 - 2.3281));
    CHECK(row["computed"]["missing"].is_null());
    CHECK(row["computed"]["label"] == "x,y");
    const auto& row2 = j["tables"][0]["rows"][1];
    CHECK(row2["reference"]["missing"] == 2.697);
}

TEST_CASE("csv output escapes and adds published columns") {
    const std::string csv = report::render_csv(sample_document());
    CHECK(csv.rfind("id,theta,s,s_paper,s_delta,label,missing\n", 0) == 0);
    CHECK(csv.find("\"x,y\"") != std::string::npos);
    CHECK(csv.find("r2,0,1,,,plain,2.697") != std::string::npos);
    const auto files = report::render_csv_files(sample_document());
    REQUIRE(files.size() == 1);
    CHECK(files[0].name == "demo.csv");
}

TEST_CASE("markdown shows published value and delta") {
    const std::string md = report::render_markdown(sample_document());
    CHECK(md.find("2.38896 (paper 2.3281, delta 0.0608552)") != std::string::npos);
    CHECK(md.find("| - |") != std::string::npos);
}

TEST_CASE("renderers are deterministic") {
    for (auto f : {report::Format::csv, report::Format::json, report::Format::markdown}) {
        CHECK(report::render(sample_document(), f) == report::render(sample_document(), f));
    }
}

TEST_CASE("empty document renders") {
    const report::Document doc;
    const auto j = nlohmann::json::parse(report::render_json(doc));
    CHECK(j["tables"].empty());
    CHECK(report::render_csv(doc).empty());
    CHECK_NOTHROW(report::render_markdown(doc));
}
