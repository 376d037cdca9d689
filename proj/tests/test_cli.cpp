#include "cli.hpp"

#include "doctest.h"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using chshlab::cli::run_cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args, const char* env = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err, env);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("chshlab_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"--grid-size", "0", "suite"}).code == 2);
    CHECK(run({"scan"}).code == 2);
    CHECK(run({"scan", "--theta", "22.5", "--setting", "0,1,2,3"}).code == 2);
    CHECK(run({"scan", "--setting", "0,1,2"}).code == 2);
    CHECK(run({"tables", "--lambda-index", "99"}).code == 2);
    CHECK(run({"series", "--kind", "fig7"}).code == 2);
    CHECK(run({"--format", "xml", "suite"}).code == 2);
}

TEST_CASE("scan exit codes") {
    CHECK(run({"scan", "--theta", "22.5"}).code == 3);
    const Outcome r = run({"scan", "--theta", "90"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["metadata"]["command"] == "scan");
    CHECK(run({"scan", "--setting", "0,45,90,135"}).code == 0);
}

TEST_CASE("grid size flows into tables") {
    const Outcome r = run({"--grid-size", "4", "tables", "--lambda-index", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["grid"]["n_states"] == 4);
    CHECK(j["tables"][0]["rows"].size() == 4);
    CHECK(j["tables"][0]["columns"].size() == 4);
}

TEST_CASE("reruns are byte-identical") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"suite", "--include-individual"}, {"compare"}, {"breakdown"}, {"diffract"}, {"series", "--kind", "fig3"},
             {"--seed", "5", "compare", "--mc-samples", "1000"}, {"tables", "--lambda-index", "1"}}) {
        for (const char* fmt : {"json", "csv", "markdown"}) {
            std::vector<std::string> full{"--format", fmt};
            full.insert(full.end(), args.begin(), args.end());
            const Outcome a = run(full);
            const Outcome b = run(full);
            CHECK(a.code == 0);
            CHECK(a.out == b.out);
        }
    }
}

TEST_CASE("format from the environment, flag wins") {
    CHECK(run({"suite"}, "csv").out.rfind("id,", 0) == 0);
    CHECK(run({"--format", "json", "suite"}, "csv").out.front() == '{');
    CHECK(run({"suite"}, "xml").code == 2);
    CHECK(run({"suite"}).out.front() == '{');
}

TEST_CASE("compare with Monte-Carlo echoes the seed") {
    const Outcome r = run({"--seed", "123", "compare", "--mc-samples", "2000"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["metadata"]["seed"] == "123");
    CHECK(j["tables"].size() == 2);
    CHECK(run({"compare", "--mc-samples", "1"}).code == 2);
}

TEST_CASE("diffract options") {
    const Outcome r = run({"--format", "csv", "diffract", "--d", "0.001mm", "--wavelengths", "485,565,750nm"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(run({"diffract", "--d", "1um", "--wavelengths", "750nm"}).out);
    CHECK(j["tables"][0]["rows"].size() == 1);
    CHECK(run({"diffract", "--d", "0.01furlong"}).code == 2);
    CHECK(run({"diffract", "--d", "-1mm"}).code == 2);
    const auto central = nlohmann::json::parse(run({"diffract", "--orders", "0"}).out);
    CHECK(central["tables"][0]["rows"].size() == 3);
}

TEST_CASE("output to files and directories") {
    TempDir tmp;
    const fs::path file = tmp.path / "suite.json";
    CHECK(run({"-o", file.string(), "suite"}).code == 0);
    CHECK(fs::file_size(file) > 0);
    const fs::path dir = tmp.path / "csv/";
    CHECK(run({"--format", "csv", "-o", dir.string(), "suite", "--include-individual"}).code == 0);
    CHECK(fs::exists(tmp.path / "csv" / "population_suite.csv"));
    CHECK(fs::exists(tmp.path / "csv" / "individual_limits.csv"));
    CHECK(run({"-o", (tmp.path / "missing" / "x.json").string(), "suite"}).code == 4);
}

TEST_CASE("stats command") {
    TempDir tmp;
    const fs::path csv = tmp.path / "times.csv";
    write(csv, "age,sex,minutes\n18-39,men,200\n18-39,men,x\n18-39,women,230\n");
    const Outcome ok = run({"stats", "--input", csv.string(), "--group-by", "age,sex", "--value", "minutes"});
    REQUIRE(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["metadata"]["diagnostics"] == "1");
    CHECK(run({"--strict", "stats", "--input", csv.string(), "--group-by", "age,sex", "--value", "minutes"}).code ==
          4);
    CHECK(run({"stats", "--input", csv.string(), "--group-by", "nope", "--value", "minutes"}).code == 2);
    CHECK(run({"stats", "--input", (tmp.path / "absent.csv").string(), "--value", "minutes"}).code == 4);
    const fs::path empty = tmp.path / "empty.csv";
    write(empty, "age,sex,minutes\n");
    CHECK(run({"stats", "--input", empty.string(), "--value", "minutes"}).code == 0);
}
