#include "chshlab/bell_suite.hpp"

#include "chshlab/errors.hpp"
#include "chshlab/hv_model.hpp"
#include "chshlab/qm_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chshlab::bell {

namespace {

using report::Cell;
using report::Document;
using report::Table;

constexpr double kThetaMatch = 1e-9;

bool same_theta(double lhs, double rhs) { return std::fabs(lhs - rhs) < kThetaMatch; }

constexpr PublishedSuiteEntry kPopulationSuite[] = {
    {1, 11.25, 2.3281},  {2, 22.5, 2.7941},   {3, 33.75, 2.0467}, {4, 45.0, -0.0587},
    {5, 56.25, -2.0786}, {6, 67.5, -2.7941},  {7, 78.75, -2.4049}, {8, 90.0, -2.0000},
    {9, 101.25, -2.3281}, {10, 112.5, -2.7941},
};

struct ThetaBounds {
    double theta;
    PublishedBounds bounds;
};

// 101.25 is printed with its bounds swapped in sign; it is left out.
constexpr ThetaBounds kIndividualBounds[] = {
    {11.25, {0.541, 1.848}},   {22.5, {1.414, 1.414}},   {33.75, {0.383, 1.689}},
    {45.0, {-1.0, 1.0}},       {56.25, {-1.689, -0.383}}, {67.5, {-1.414, -1.414}},
    {78.75, {-1.848, -0.541}}, {90.0, {-2.0, 0.0}},       {112.5, {-1.414, -1.414}},
};

const std::vector<IndividualSummaryRow>& individual_summary_rows() {
    // The first row is printed as "11.25, 78.25"; the grid angle is 78.75.
    static const std::vector<IndividualSummaryRow> rows = {
        {{11.25, 78.75}, {{0.541, 1.848}, {-1.848, -0.541}}},
        {{22.5, 67.5}, {{1.414, 1.414}, {-1.414, -1.414}}},
        {{33.75, 56.25}, {{0.383, 1.689}, {-1.689, -0.383}}},
        {{45.0, 135.0}, {{-1.0, 1.0}}},
        {{90.0, 180.0}, {{-2.0, 2.0}}},
    };
    return rows;
}

constexpr PublishedComparison kComparison[] = {
    {11.25, 2.328, 2.389},
    {22.5, 2.794, 2.828},
    {33.75, 2.047, 2.072},
};

std::string bool_text(bool value) { return value ? "true" : "false"; }

std::string setting_label(const ChshSetting& s) {
    return "(" + report::format_number(s.a.degrees()) + ", " + report::format_number(s.b.degrees()) + ", " +
           report::format_number(s.a_prime.degrees()) + ", " + report::format_number(s.b_prime.degrees()) + ")";
}

/// theta when the setting is (0, t, 2t, 3t) for some t.
std::optional<double> equal_spacing_theta(const ChshSetting& setting) {
    const double theta = setting.b.degrees();
    if (equal_spacing_setting(theta) == setting) {
        return theta;
    }
    return std::nullopt;
}

std::size_t check_index(std::size_t index, const PolarizationGrid& grid, const char* what) {
    if (index >= grid.size()) {
        throw DomainError(std::string(what) + " index " + std::to_string(index) + " out of range for a " +
                          std::to_string(grid.size()) + "-state grid");
    }
    return index;
}

Document base_document(std::size_t grid_states) {
    Document doc;
    doc.grid_states = grid_states;
    doc.notes = model_notes();
    return doc;
}

Cell optional_cell(const std::optional<double>& value, bool reference) {
    if (!value) {
        return Cell::absent();
    }
    return reference ? Cell::reference(*value) : Cell::computed(*value);
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<double> ReferenceExperiment::recombined_s() const noexcept {
    if (!has_components()) {
        return std::nullopt;
    }
    return chsh_combination(*e_ab, *e_abp, *e_apb, *e_apbp);
}

const ReferenceExperiment& aspect_reference() {
    static const ReferenceExperiment ref{
        "aspect",
        "Aspect, Grangier, Roger, Phys. Rev. Lett. 49, 91 (1982)",
        std::nullopt, std::nullopt, std::nullopt, std::nullopt,
        2.697, 0.015};
    return ref;
}

const ReferenceExperiment& cosmic_bell_reference() {
    static const ReferenceExperiment ref{
        "cosmic_bell",
        "Cosmic Bell test, A. Zeilinger group (quasar-controlled polarizer settings)",
        0.670, -0.739, 0.637, 0.628,
        2.674, std::nullopt};
    return ref;
}

const ReferenceExperiment& laser_reference() {
    static const ReferenceExperiment ref{
        "laser_entangled_photons",
        "Laser entangled-photon Bell test, documentary demonstration (J. Al-Khalili)",
        0.559, -0.591, 0.560, 0.820,
        2.530, std::nullopt};
    return ref;
}

std::vector<ReferenceExperiment> all_references() {
    return {aspect_reference(), cosmic_bell_reference(), laser_reference()};
}

std::span<const PublishedSuiteEntry> published_population_suite() { return kPopulationSuite; }

std::optional<PublishedBounds> published_individual_bounds(double theta) {
    for (const ThetaBounds& entry : kIndividualBounds) {
        if (same_theta(entry.theta, theta)) {
            return entry.bounds;
        }
    }
    return std::nullopt;
}

std::span<const IndividualSummaryRow> published_individual_summary() { return individual_summary_rows(); }

std::span<const PublishedComparison> published_comparison() { return kComparison; }

std::array<double, 5> published_breakdown_hv() { return {0.686, -0.728, 0.669, 0.711, 2.794}; }

// ---------------------------------------------------------------------------

ScanResult scan_individual(const ChshSetting& setting, const PolarizationGrid& grid) {
    if (grid.empty()) {
        throw DomainError("polarization grid is empty");
    }
    ScanResult result;
    result.setting = setting;
    result.per_state.reserve(grid.size());
    result.s_min = std::numeric_limits<double>::infinity();
    result.s_max = -std::numeric_limits<double>::infinity();
    for (const AngleDeg lambda : grid.states) {
        const double s = hv::chsh_single(setting, lambda);
        result.per_state.push_back({lambda, s});
        result.s_min = std::min(result.s_min, s);
        result.s_max = std::max(result.s_max, s);
    }
    result.population_s = hv::chsh_population(setting, grid);
    return result;
}

std::vector<IndividualSummary> individual_summary(const PolarizationGrid& grid) {
    std::vector<IndividualSummary> out;
    for (const IndividualSummaryRow& row : individual_summary_rows()) {
        const ScanResult first = scan_individual(equal_spacing_setting(row.thetas[0]), grid);
        const ScanResult second = scan_individual(equal_spacing_setting(row.thetas[1]), grid);
        IndividualSummary summary{row, {}};
        if (row.printed.size() == 2) {
            summary.computed = {{first.s_min, first.s_max}, {second.s_min, second.s_max}};
        } else {
            summary.computed = {{std::min(first.s_min, second.s_min), std::max(first.s_max, second.s_max)}};
        }
        out.push_back(std::move(summary));
    }
    return out;
}

std::vector<PopulationSuiteRow> run_population_suite(const PolarizationGrid& grid) {
    std::vector<PopulationSuiteRow> rows;
    rows.reserve(std::size(kPopulationSuite));
    for (const PublishedSuiteEntry& entry : kPopulationSuite) {
        const ChshSetting setting = equal_spacing_setting(entry.theta);
        const double s = hv::chsh_population(setting, grid);
        rows.push_back({entry.test_index, entry.theta, setting, s, entry.s, s - entry.s});
    }
    return rows;
}

ComparisonRow compare_models(double theta, const PolarizationGrid& grid) {
    const ChshSetting setting = equal_spacing_setting(theta);
    ComparisonRow row;
    row.theta = theta;
    row.hv_s = hv::chsh_population(setting, grid);
    row.qm_s = qm::qm_chsh(setting);
    row.hv_violates = violates_local_bound(row.hv_s);
    row.qm_violates = violates_local_bound(row.qm_s);
    for (const PublishedComparison& published : kComparison) {
        if (same_theta(published.theta, theta)) {
            row.published_hv_s = published.hv_s;
            row.published_qm_s = published.qm_s;
        }
    }
    // The Aspect value sits in the 22.5 column by table position only.
    if (same_theta(theta, 22.5)) {
        const ReferenceExperiment& aspect = aspect_reference();
        row.references.push_back({aspect.name, aspect.s, aspect.s_uncertainty});
    }
    return row;
}

BreakdownResult correlator_breakdown(const ChshSetting& setting, const PolarizationGrid& grid) {
    BreakdownResult out;
    out.setting = setting;
    const std::array<double, 4> e = {
        hv::expected_value_population(setting.a, setting.b, grid),
        hv::expected_value_population(setting.a, setting.b_prime, grid),
        hv::expected_value_population(setting.a_prime, setting.b, grid),
        hv::expected_value_population(setting.a_prime, setting.b_prime, grid),
    };
    out.hv = {"hidden_variables", {e[0], e[1], e[2], e[3]}, chsh_combination(e[0], e[1], e[2], e[3]), std::nullopt};
    out.qm = {"qm", {}, qm::qm_chsh(setting), std::nullopt};
    if (equal_spacing_setting(22.5) == setting) {
        out.published_hv = published_breakdown_hv();
    }
    for (const ReferenceExperiment* ref : {&cosmic_bell_reference(), &laser_reference()}) {
        out.references.push_back({ref->name, {ref->e_ab, ref->e_abp, ref->e_apb, ref->e_apbp}, ref->s, ref->s_uncertainty});
    }
    return out;
}

AppendixTables regenerate_appendix_tables(std::size_t lambda_index, const PolarizationGrid& grid) {
    check_index(lambda_index, grid, "lambda");
    const std::size_t n = grid.size();
    AppendixTables t;
    t.lambda_index = lambda_index;
    t.lambda = grid.states[lambda_index];
    t.orientations = grid.states;
    t.pp = t.nn = t.pn = t.np = t.e = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const JointQuantities q = hv::joint_quantities(grid.states[i], grid.states[j], t.lambda);
            t.pp(i, j) = q.pp;
            t.nn(i, j) = q.nn;
            t.pn(i, j) = q.pn;
            t.np(i, j) = q.np;
            t.e(i, j) = 0.5 * q.signed_sum();
        }
    }
    return t;
}

// ---------------------------------------------------------------------------

SeriesKind parse_series_kind(std::string_view name) {
    if (name == "fig2") {
        return SeriesKind::fig2;
    }
    if (name == "fig3") {
        return SeriesKind::fig3;
    }
    throw UsageError("unknown series kind '" + std::string(name) + "' (expected fig2 or fig3)");
}

std::vector<Series> emit_series(SeriesKind kind, const SeriesParams& params, const PolarizationGrid& grid) {
    if (grid.empty()) {
        throw DomainError("polarization grid is empty");
    }
    std::vector<Series> out;
    if (kind == SeriesKind::fig2) {
        for (const std::size_t j : params.b_indices) {
            const AngleDeg b = grid.states[check_index(j, grid, "b")];
            const std::string tag = "[b" + std::to_string(j + 1) + "]";
            Series hv_pp{"hv_pp" + tag, {}}, qm_pp{"qm_pp" + tag, {}}, pp_diff{"pp_difference" + tag, {}};
            Series hv_e{"hv_E" + tag, {}}, qm_e{"qm_E" + tag, {}}, diff{"difference" + tag, {}};
            for (const AngleDeg a : grid.states) {
                const double x = a.degrees();
                const hv::PopulationResult pop = hv::evaluate_population(a, b, grid);
                const double qpp = qm::qm_joint(a, b).pp;
                const double qe = qm::qm_expected_value(a, b);
                hv_pp.points.emplace_back(x, pop.joint_mean.pp);
                qm_pp.points.emplace_back(x, qpp);
                pp_diff.points.emplace_back(x, pop.joint_mean.pp - qpp);
                hv_e.points.emplace_back(x, pop.expected_value);
                qm_e.points.emplace_back(x, qe);
                diff.points.emplace_back(x, pop.expected_value - qe);
            }
            for (Series* s : {&hv_pp, &qm_pp, &pp_diff, &hv_e, &qm_e, &diff}) {
                out.push_back(std::move(*s));
            }
        }
    } else {
        const AngleDeg b = grid.states[check_index(params.fixed_b_index, grid, "b")];
        for (const std::size_t k : params.lambda_indices) {
            const AngleDeg lambda = grid.states[check_index(k, grid, "lambda")];
            Series curve{"pp[lambda" + std::to_string(k + 1) + "=" + report::format_number(lambda.degrees()) + "]", {}};
            for (const AngleDeg a : grid.states) {
                curve.points.emplace_back(a.degrees(), hv::joint_quantities(a, b, lambda).pp);
            }
            out.push_back(std::move(curve));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> model_notes() {
    return {
        "Filters act on a polarization state through cos/sin of twice the filter-to-polarization angle.",
        "pp, nn, pn, np are signed correlator contributions, not probabilities.",
        "Single-state correlator: E = (pp + nn - pn - np) / 2.",
        "Population correlator: undivided pp + nn - pn - np of the ensemble means (grid mean of 2E); "
        "ensemble quantities are weighted means over a uniform grid.",
        "QM correlator completion: pp = cos^2(a-b)/2, nn = sin^2(a-b)/2, pn = np = sin^2(a-b)/2, "
        "rescaled so E(a,a) = 1, giving E = cos(2(a-b)).",
    };
}

std::string index_label(char prefix, std::size_t index, AngleDeg angle) {
    return std::string(1, prefix) + std::to_string(index + 1) + "(" + report::format_number(angle.degrees()) + ")";
}

Document scan_document(const ScanResult& scan, std::size_t grid_states) {
    Document doc = base_document(grid_states);
    const std::optional<double> theta = equal_spacing_theta(scan.setting);
    const std::optional<PublishedBounds> bounds = theta ? published_individual_bounds(*theta) : std::nullopt;

    Table summary{"scan_summary", "CHSH S for individual polarization states: limits over the grid", {}, {}, {}};
    summary.columns = {"setting", "theta", "s_min", "s_max", "population_s", "population_violates"};
    summary.add_row("scan", {
        Cell::text(setting_label(scan.setting)),
        theta ? Cell::computed(*theta) : Cell::absent(),
        bounds ? Cell::compared(scan.s_min, bounds->s_min) : Cell::computed(scan.s_min),
        bounds ? Cell::compared(scan.s_max, bounds->s_max) : Cell::computed(scan.s_max),
        Cell::computed(scan.population_s),
        Cell::text(bool_text(violates_local_bound(scan.population_s))),
    });

    Table states{"scan_states", "CHSH S per polarization state", {"lambda", "s"}, {}, {}};
    for (std::size_t k = 0; k < scan.per_state.size(); ++k) {
        states.add_row("lambda" + std::to_string(k + 1),
                       {Cell::computed(scan.per_state[k].lambda.degrees()), Cell::computed(scan.per_state[k].s)});
    }
    doc.tables.push_back(std::move(summary));
    doc.tables.push_back(std::move(states));
    return doc;
}

Document suite_document(const std::vector<PopulationSuiteRow>& rows, std::size_t grid_states) {
    Document doc = base_document(grid_states);
    Table table{"population_suite",
                "CHSH S for the population (all polarization states) at several test cases",
                {"theta", "setting", "s"},
                {},
                {"Published values carry visible numerical noise (up to ~0.06); computed values are exact grid means."}};
    for (const PopulationSuiteRow& row : rows) {
        table.add_row("test" + std::to_string(row.test_index),
                      {Cell::computed(row.theta), Cell::text(setting_label(row.setting)),
                       Cell::compared(row.s_value, row.published_s)});
    }
    doc.tables.push_back(std::move(table));
    return doc;
}

report::Table individual_summary_table(const std::vector<IndividualSummary>& summary) {
    Table table{"individual_limits",
                "CHSH S limits for photon polarization at individual instances",
                {"theta", "s_min", "s_max"},
                {},
                {"Rows with one printed pair cover both setups together; the printed 78.25 is read as 78.75."}};
    for (const IndividualSummary& entry : summary) {
        const std::string base = report::format_number(entry.row.thetas[0]) + "," +
                                 report::format_number(entry.row.thetas[1]);
        for (std::size_t i = 0; i < entry.computed.size(); ++i) {
            const bool joint = entry.computed.size() == 1;
            table.add_row(joint ? base : "theta=" + report::format_number(entry.row.thetas[i]),
                          {joint ? Cell::text(base) : Cell::computed(entry.row.thetas[i]),
                           Cell::compared(entry.computed[i].s_min, entry.row.printed[i].s_min),
                           Cell::compared(entry.computed[i].s_max, entry.row.printed[i].s_max)});
        }
    }
    return table;
}

Document comparison_document(const std::vector<ComparisonRow>& rows, std::size_t grid_states) {
    Document doc = base_document(grid_states);
    Table table{"model_comparison",
                "CHSH S over all polarization states: hidden variables, QM, lab data",
                {"theta", "hv_s", "qm_s", "hv_violates", "qm_violates", "reference", "reference_s",
                 "reference_uncertainty"},
                {},
                {"Published columns are mapped to theta = 11.25, 22.5, 33.75 by matching the hidden-variable "
                 "row to population tests 1-3.",
                 "The Aspect et al. value is attached to theta = 22.5 by column position only."}};
    for (const ComparisonRow& row : rows) {
        std::vector<Cell> cells = {
            Cell::computed(row.theta),
            Cell::compared(row.hv_s, row.published_hv_s),
            Cell::compared(row.qm_s, row.published_qm_s),
            Cell::text(bool_text(row.hv_violates)),
            Cell::text(bool_text(row.qm_violates)),
        };
        if (row.references.empty()) {
            cells.push_back(Cell::absent());
            cells.push_back(Cell::absent());
            cells.push_back(Cell::absent());
            table.add_row("theta=" + report::format_number(row.theta), std::move(cells));
            continue;
        }
        const std::string id = "theta=" + report::format_number(row.theta);
        for (std::size_t r = 0; r < row.references.size(); ++r) {
            std::vector<Cell> with_ref = cells;
            with_ref.push_back(Cell::text(row.references[r].name));
            with_ref.push_back(Cell::reference(row.references[r].s));
            with_ref.push_back(optional_cell(row.references[r].uncertainty, true));
            table.add_row(r == 0 ? id : id + "#" + std::to_string(r + 1), std::move(with_ref));
        }
    }
    doc.tables.push_back(std::move(table));
    return doc;
}

Document breakdown_document(const BreakdownResult& breakdown, std::size_t grid_states) {
    Document doc = base_document(grid_states);
    Table table{"correlator_breakdown",
                "Bell test analysis over all polarization states: hidden variables, QM, lab data",
                {"e_ab", "e_abp", "e_apb", "e_apbp", "s", "s_uncertainty"},
                {},
                {"Setting " + setting_label(breakdown.setting) + ".",
                 "QM correlator components have no closed form here and are rendered absent."}};

    std::vector<Cell> hv_cells;
    for (std::size_t c = 0; c < 4; ++c) {
        hv_cells.push_back(breakdown.published_hv
                               ? Cell::compared(*breakdown.hv.components[c], (*breakdown.published_hv)[c])
                               : Cell::computed(*breakdown.hv.components[c]));
    }
    hv_cells.push_back(breakdown.published_hv ? Cell::compared(breakdown.hv.s, (*breakdown.published_hv)[4])
                                              : Cell::computed(breakdown.hv.s));
    hv_cells.push_back(Cell::absent());
    table.add_row(breakdown.hv.name, std::move(hv_cells));

    const bool at_published = breakdown.published_hv.has_value();
    table.add_row(breakdown.qm.name, {Cell::absent(), Cell::absent(), Cell::absent(), Cell::absent(),
                                      at_published ? Cell::compared(breakdown.qm.s, 2.828) : Cell::computed(breakdown.qm.s),
                                      Cell::absent()});

    for (const CorrelatorRow& ref : breakdown.references) {
        std::vector<Cell> cells;
        for (const auto& component : ref.components) {
            cells.push_back(optional_cell(component, true));
        }
        cells.push_back(Cell::reference(ref.s));
        cells.push_back(optional_cell(ref.s_uncertainty, true));
        table.add_row(ref.name, std::move(cells));
    }
    doc.tables.push_back(std::move(table));
    return doc;
}

Document appendix_document(const AppendixTables& tables) {
    Document doc = base_document(tables.orientations.size());
    const std::string at = "lambda" + std::to_string(tables.lambda_index + 1) + "=" +
                           report::format_number(tables.lambda.degrees());
    doc.metadata.emplace_back("lambda_index", std::to_string(tables.lambda_index));
    doc.metadata.emplace_back("lambda_degrees", report::format_number(tables.lambda.degrees()));

    std::vector<std::string> columns;
    for (std::size_t j = 0; j < tables.orientations.size(); ++j) {
        columns.push_back(index_label('b', j, tables.orientations[j]));
    }
    const std::pair<const char*, const Matrix*> entries[] = {
        {"pp", &tables.pp}, {"nn", &tables.nn}, {"pn", &tables.pn}, {"np", &tables.np}, {"e", &tables.e},
    };
    for (const auto& [name, matrix] : entries) {
        const std::string what = std::string(name) == "e" ? "single-state correlator E" : std::string("joint quantity ") + name;
        Table table{std::string(name) + "_" + at, "Prediction, " + what + "(a_i, b_j), for polarization state " + at,
                    columns, {}, {}};
        for (std::size_t i = 0; i < matrix->rows(); ++i) {
            std::vector<Cell> cells;
            cells.reserve(matrix->cols());
            for (std::size_t j = 0; j < matrix->cols(); ++j) {
                cells.push_back(Cell::computed((*matrix)(i, j)));
            }
            table.add_row(index_label('a', i, tables.orientations[i]), std::move(cells));
        }
        doc.tables.push_back(std::move(table));
    }
    return doc;
}

Document series_document(SeriesKind kind, const std::vector<Series>& series, std::size_t grid_states) {
    Document doc = base_document(grid_states);
    const bool fig2 = kind == SeriesKind::fig2;
    Table table{fig2 ? "fig2" : "fig3",
                fig2 ? "Both photons pass: hidden-variable ensemble vs QM closed form"
                     : "Hidden-variable pp for selected individual polarization states",
                {"a"},
                {},
                {}};
    if (fig2) {
        table.notes.push_back("pp_difference is hv_pp - qm_pp = -sin^2(a-b)/2; difference is hv_E - qm_E and "
                              "vanishes on uniform grids.");
    }
    for (const Series& s : series) {
        table.columns.push_back(s.label);
    }
    const std::size_t n_points = series.empty() ? 0 : series.front().points.size();
    for (std::size_t p = 0; p < n_points; ++p) {
        std::vector<Cell> cells{Cell::computed(series.front().points[p].first)};
        for (const Series& s : series) {
            cells.push_back(Cell::computed(s.points[p].second));
        }
        table.add_row("a" + std::to_string(p + 1), std::move(cells));
    }
    doc.tables.push_back(std::move(table));
    return doc;
}

}  // namespace chshlab::bell
