#include "cli.hpp"

#include "chshlab/bell_suite.hpp"
#include "chshlab/diffraction.hpp"
#include "chshlab/errors.hpp"
#include "chshlab/hv_model.hpp"
#include "chshlab/stats.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace chshlab::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 ok, 2 usage error, 3 population |S| > 2 (scan only; output is still written), "
    "4 I/O error.";

struct RunConfig {
    std::size_t grid_size = kDefaultGridSize;
    std::string format;
    std::string output;
    std::optional<std::uint64_t> seed;
    bool strict = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double parse_number(const std::string& text, const std::string& what) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw UsageError("invalid number '" + text + "' for " + what);
    }
    return value;
}

ChshSetting parse_setting(const std::string& text) {
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 4) {
        throw UsageError("--setting expects four comma-separated angles a,b,a',b'");
    }
    return ChshSetting::from_degrees(parse_number(parts[0], "--setting"), parse_number(parts[1], "--setting"),
                                     parse_number(parts[2], "--setting"), parse_number(parts[3], "--setting"));
}

std::optional<double> unit_scale(std::string_view unit) {
    if (unit == "nm") return 1e-9;
    if (unit == "um") return 1e-6;
    if (unit == "mm") return 1e-3;
    if (unit == "cm") return 1e-2;
    if (unit == "m") return 1.0;
    return std::nullopt;
}

/// Splits "0.01mm" into (0.01, "mm"); the unit may be empty.
std::pair<double, std::string> split_quantity(const std::string& text, const std::string& what) {
    const auto unit_start = text.find_first_not_of("0123456789.eE+-");
    std::string number = text.substr(0, unit_start);
    std::string unit = unit_start == std::string::npos ? std::string() : text.substr(unit_start);
    // "2e" style prefixes are not lengths
    if (!unit.empty() && !unit_scale(unit)) {
        throw UsageError("unknown length unit '" + unit + "' in " + what + " (use nm, um, mm, cm or m)");
    }
    return {parse_number(number, what), unit};
}

/// Bare numbers are meters.
double parse_length(const std::string& text, const std::string& what) {
    const auto [value, unit] = split_quantity(text, what);
    return value * (unit.empty() ? 1.0 : *unit_scale(unit));
}

/// "485,565,750nm": a trailing unit applies to every entry without its own.
std::vector<diffraction::Wavelength> parse_wavelengths(const std::string& text) {
    std::vector<std::pair<double, std::string>> items;
    for (const std::string& part : split(text, ',')) {
        items.push_back(split_quantity(part, "--wavelengths"));
    }
    if (items.empty()) {
        throw UsageError("--wavelengths needs at least one value");
    }
    const std::string fallback = items.back().second;
    std::vector<diffraction::Wavelength> out;
    for (const auto& [value, unit] : items) {
        const std::string& u = unit.empty() ? fallback : unit;
        const double meters = value * (u.empty() ? 1.0 : *unit_scale(u));
        out.push_back({report::format_number(std::round(meters * 1e15) / 1e6) + "nm", meters});
    }
    return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (const std::string& part : split(text, ',')) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
            throw UsageError("invalid index '" + part + "' for " + what);
        }
        out.push_back(value);
    }
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    file << content;
    if (!file) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

void emit(report::Document doc, const std::string& command, const RunConfig& config, report::Format format,
          std::ostream& out) {
    doc.grid_states = config.grid_size;
    doc.metadata.insert(doc.metadata.begin(), {"command", command});
    if (config.output.empty()) {
        out << report::render(doc, format);
        return;
    }
    const fs::path target(config.output);
    std::error_code ec;
    const bool to_directory = format == report::Format::csv &&
                              (fs::is_directory(target, ec) || config.output.back() == '/');
    if (to_directory) {
        fs::create_directories(target, ec);
        if (ec) {
            throw IoError("cannot create directory '" + target.string() + "': " + ec.message());
        }
        for (const report::CsvFile& file : report::render_csv_files(doc)) {
            write_file(target / file.name, file.content);
        }
        return;
    }
    write_file(target, report::render(doc, format));
}

void add_mc_table(report::Document& doc, const std::vector<double>& thetas, std::uint64_t samples,
                  std::uint64_t seed) {
    using report::Cell;
    doc.metadata.emplace_back("seed", std::to_string(seed));
    doc.metadata.emplace_back("rng", std::string(hv::kMcAlgorithm));
    doc.metadata.emplace_back("mc_samples", std::to_string(samples));
    report::Table table{"mc_convergence",
                        "Monte-Carlo (continuous lambda) population correlators vs cos(2(a-b))",
                        {"theta", "pair", "estimate", "std_error", "exact"},
                        {},
                        {}};
    for (const double theta : thetas) {
        const ChshSetting s = equal_spacing_setting(theta);
        const std::pair<const char*, std::pair<AngleDeg, AngleDeg>> pairs[] = {
            {"ab", {s.a, s.b}}, {"ab'", {s.a, s.b_prime}}, {"a'b", {s.a_prime, s.b}}, {"a'b'", {s.a_prime, s.b_prime}},
        };
        for (const auto& [name, ab] : pairs) {
            const hv::McEstimate est = hv::mc_expected_value(ab.first, ab.second, samples, seed);
            table.add_row("theta=" + report::format_number(theta) + ":" + name,
                          {Cell::computed(theta), Cell::text(name), Cell::computed(est.estimate),
                           Cell::computed(est.std_error),
                           Cell::computed(cos_deg(2.0 * (ab.first.degrees() - ab.second.degrees())))});
        }
    }
    doc.tables.push_back(std::move(table));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const char* env_format) {
    CLI::App app{"CHSH lab: local polarization model vs QM closed form, table regeneration and reports"};
    app.footer(std::string(kExitCodeHelp) + " Default format: --format, else $" + kFormatEnvVar + ", else json.");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    app.add_option("--grid-size", config.grid_size, "Number of polarization states (default 32)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", config.format, "csv | json | markdown");
    app.add_option("--output,-o", config.output,
                   "Output file; for csv an existing directory (or a path ending in '/') gets one file per table");
    std::uint64_t seed_value = 0;
    CLI::Option* seed_opt = app.add_option("--seed", seed_value, "Seed for Monte-Carlo estimates");
    app.add_flag("--strict", config.strict, "Fail on the first malformed input row");

    std::size_t tables_lambda = 0;
    CLI::App* tables = app.add_subcommand("tables", "Per-state pp/nn/pn/np and E matrices for one polarization state");
    tables->add_option("--lambda-index", tables_lambda, "0-based polarization state index")->required();

    double scan_theta = 0.0;
    std::string scan_setting;
    CLI::App* scan = app.add_subcommand("scan", "Single-state CHSH S over every polarization state");
    CLI::Option* theta_opt = scan->add_option("--theta", scan_theta, "Equal spacing angle: (0, t, 2t, 3t)");
    CLI::Option* setting_opt = scan->add_option("--setting", scan_setting, "Explicit a,b,a',b' in degrees");
    theta_opt->excludes(setting_opt);
    setting_opt->excludes(theta_opt);

    std::vector<double> compare_thetas{11.25, 22.5, 33.75};
    std::uint64_t mc_samples = 0;
    CLI::App* compare = app.add_subcommand("compare", "Population S for both models with lab references");
    compare->add_option("--theta", compare_thetas, "Equal spacing angles (default 11.25 22.5 33.75)");
    compare->add_option("--mc-samples", mc_samples, "Also report Monte-Carlo correlators with this many samples")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000000}));

    double breakdown_theta = 22.5;
    CLI::App* breakdown = app.add_subcommand("breakdown", "Population correlator components and S with lab rows");
    breakdown->add_option("--theta", breakdown_theta, "Equal spacing angle (default 22.5)");

    bool include_individual = false;
    CLI::App* suite = app.add_subcommand("suite", "Population S for the ten standard test settings");
    suite->add_flag("--include-individual", include_individual, "Append the single-state S limits table");

    std::string d_text = "0.01mm";
    std::string x_text = "2.0m";
    unsigned orders = 2;
    std::string wavelengths_text;
    CLI::App* diffract = app.add_subcommand("diffract", "Grating maxima angles and screen positions");
    diffract->add_option("--d", d_text, "Slit spacing with unit, e.g. 0.01mm (bare numbers are meters)");
    diffract->add_option("--x", x_text, "Screen distance with unit, e.g. 2.0m");
    diffract->add_option("--orders", orders, "Highest diffraction order");
    diffract->add_option("--wavelengths", wavelengths_text,
                         "Comma-separated wavelengths; a trailing unit applies to all, e.g. 485,565,750nm");

    std::string stats_input;
    std::string stats_group_by;
    std::string stats_value;
    CLI::App* stats_cmd = app.add_subcommand("stats", "Grouped descriptive statistics for a CSV file");
    stats_cmd->add_option("--input", stats_input, "CSV file with a header row")->required();
    stats_cmd->add_option("--group-by", stats_group_by, "Comma-separated key columns");
    stats_cmd->add_option("--value", stats_value, "Numeric value column")->required();

    std::string series_kind;
    std::string series_b = "0,2,4,6,8";
    std::string series_lambda = "0,1,2,3";
    std::size_t series_fixed_b = 0;
    CLI::App* series = app.add_subcommand("series", "Plot-ready data series (fig2 | fig3)");
    series->add_option("--kind", series_kind, "fig2 or fig3")->required();
    series->add_option("--b-index", series_b, "fig2: 0-based filter-B indices (default 0,2,4,6,8)");
    series->add_option("--lambda-index", series_lambda, "fig3: 0-based polarization indices (default 0,1,2,3)");
    series->add_option("--fixed-b-index", series_fixed_b, "fig3: filter-B index (default 0)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }

    try {
        std::string format_text = config.format;
        if (format_text.empty() && env_format != nullptr && *env_format != '\0') {
            format_text = env_format;
        }
        const report::Format format = report::parse_format(format_text.empty() ? "json" : format_text);
        if (seed_opt->count() > 0) {
            config.seed = seed_value;
        }
        const PolarizationGrid grid = make_grid(config.grid_size);

        if (tables->parsed()) {
            if (tables_lambda >= grid.size()) {
                throw UsageError("--lambda-index " + std::to_string(tables_lambda) + " is out of range (0.." +
                                 std::to_string(grid.size() - 1) + ")");
            }
            emit(bell::appendix_document(bell::regenerate_appendix_tables(tables_lambda, grid)), "tables", config,
                 format, out);
            return kOk;
        }
        if (scan->parsed()) {
            if (theta_opt->count() == 0 && setting_opt->count() == 0) {
                throw UsageError("scan needs exactly one of --theta or --setting");
            }
            const ChshSetting setting =
                theta_opt->count() > 0 ? equal_spacing_setting(scan_theta) : parse_setting(scan_setting);
            const bell::ScanResult result = bell::scan_individual(setting, grid);
            emit(bell::scan_document(result, grid.size()), "scan", config, format, out);
            return bell::violates_local_bound(result.population_s) ? kBoundViolation : kOk;
        }
        if (compare->parsed()) {
            std::vector<bell::ComparisonRow> rows;
            for (const double theta : compare_thetas) {
                rows.push_back(bell::compare_models(theta, grid));
            }
            report::Document doc = bell::comparison_document(rows, grid.size());
            if (mc_samples > 0) {
                add_mc_table(doc, compare_thetas, mc_samples, config.seed.value_or(0));
            }
            emit(std::move(doc), "compare", config, format, out);
            return kOk;
        }
        if (breakdown->parsed()) {
            emit(bell::breakdown_document(bell::correlator_breakdown(equal_spacing_setting(breakdown_theta), grid),
                                          grid.size()),
                 "breakdown", config, format, out);
            return kOk;
        }
        if (suite->parsed()) {
            report::Document doc = bell::suite_document(bell::run_population_suite(grid), grid.size());
            if (include_individual) {
                doc.tables.push_back(bell::individual_summary_table(bell::individual_summary(grid)));
            }
            emit(std::move(doc), "suite", config, format, out);
            return kOk;
        }
        if (diffract->parsed()) {
            diffraction::DiffractionSetup setup = diffraction::reference_setup();
            setup.slit_spacing_m = parse_length(d_text, "--d");
            setup.screen_distance_m = parse_length(x_text, "--x");
            setup.max_order = orders;
            if (!wavelengths_text.empty()) {
                setup.wavelengths = parse_wavelengths(wavelengths_text);
            }
            setup.validate();
            emit(diffraction::spectrum_document(setup, diffraction::spectrum(setup)), "diffract", config, format,
                 out);
            return kOk;
        }
        if (stats_cmd->parsed()) {
            std::ifstream file(stats_input, std::ios::binary);
            if (!file) {
                throw IoError("cannot open '" + stats_input + "'");
            }
            stats::CsvSchema schema;
            if (!stats_group_by.empty()) {
                schema.group_columns = split(stats_group_by, ',');
            }
            schema.value_column = stats_value;
            stats::IngestResult ingest;
            try {
                ingest = stats::ingest_csv(file, schema, config.strict);
            } catch (const RowError& e) {
                throw IoError(stats_input + ": " + e.what());
            }
            std::vector<stats::GroupSummary> groups;
            if (!ingest.records.empty()) {
                groups = stats::group_summary(ingest.records);
            }
            emit(stats::summary_document(ingest, groups), "stats", config, format, out);
            return kOk;
        }
        if (series->parsed()) {
            const bell::SeriesKind kind = bell::parse_series_kind(series_kind);
            bell::SeriesParams params;
            params.b_indices = parse_index_list(series_b, "--b-index");
            params.lambda_indices = parse_index_list(series_lambda, "--lambda-index");
            params.fixed_b_index = series_fixed_b;
            emit(bell::series_document(kind, bell::emit_series(kind, params, grid), grid.size()), "series", config,
                 format, out);
            return kOk;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        // UsageError, DomainError (and EvanescentOrderError) all land here
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

}  // namespace chshlab::cli
