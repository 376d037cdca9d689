#pragma once

// Scenario runner: regenerates the published tables from both models, attaches the
// published and experimental reference values, and turns everything into report
// documents.

#include "chshlab/core.hpp"
#include "chshlab/report.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chshlab::bell {

// ---------------------------------------------------------------------------
// Embedded experimental references

struct ReferenceExperiment {
    std::string name;
    std::string citation;
    std::optional<double> e_ab;
    std::optional<double> e_abp;
    std::optional<double> e_apb;
    std::optional<double> e_apbp;
    double s = 0.0;
    std::optional<double> s_uncertainty;  // one standard error

    bool has_components() const noexcept { return e_ab && e_abp && e_apb && e_apbp; }
    /// CHSH combination of the four components; nullopt when any is missing.
    std::optional<double> recombined_s() const noexcept;
};

const ReferenceExperiment& aspect_reference();
const ReferenceExperiment& cosmic_bell_reference();
const ReferenceExperiment& laser_reference();
std::vector<ReferenceExperiment> all_references();

// ---------------------------------------------------------------------------
// Published model values

/// One printed population-suite entry: test number, spacing angle and printed S.
struct PublishedSuiteEntry {
    int test_index = 0;
    double theta = 0.0;
    double s = 0.0;
};

/// The ten population tests, theta = 11.25 m for m = 1..10.
std::span<const PublishedSuiteEntry> published_population_suite();

/// Printed lower/upper bound of the single-state S scan for an equal-spacing setting.
struct PublishedBounds {
    double s_min = 0.0;
    double s_max = 0.0;
};

/// Per-setup bounds printed under the single-state S table, keyed by theta.
std::optional<PublishedBounds> published_individual_bounds(double theta);

/// One row of the individual-instance summary: two setups sharing one printed row.
/// With a single printed pair the pair covers both setups together.
struct IndividualSummaryRow {
    std::array<double, 2> thetas{};
    std::vector<PublishedBounds> printed;
};

std::span<const IndividualSummaryRow> published_individual_summary();

/// Population-comparison columns: spacing angle with printed hidden-variable and QM S.
struct PublishedComparison {
    double theta = 0.0;
    double hv_s = 0.0;
    double qm_s = 0.0;
};

std::span<const PublishedComparison> published_comparison();

/// Printed hidden-variable breakdown row at theta = 22.5: four correlators then S.
std::array<double, 5> published_breakdown_hv();

// ---------------------------------------------------------------------------
// Individual-instance scan

struct StateS {
    AngleDeg lambda;
    double s = 0.0;
};

struct ScanResult {
    ChshSetting setting;
    std::vector<StateS> per_state;
    double s_min = 0.0;
    double s_max = 0.0;
    double population_s = 0.0;
};

ScanResult scan_individual(const ChshSetting& setting, const PolarizationGrid& grid);

struct IndividualSummary {
    IndividualSummaryRow row;
    std::vector<PublishedBounds> computed;  // same arity as row.printed
};

/// Recomputes every printed individual-instance bound row.
std::vector<IndividualSummary> individual_summary(const PolarizationGrid& grid);

// ---------------------------------------------------------------------------
// Population suite

struct PopulationSuiteRow {
    int test_index = 0;
    double theta = 0.0;
    ChshSetting setting;
    double s_value = 0.0;
    double published_s = 0.0;
    double delta = 0.0;  // s_value - published_s
};

std::vector<PopulationSuiteRow> run_population_suite(const PolarizationGrid& grid);

// ---------------------------------------------------------------------------
// Model comparison

inline constexpr double kLocalBound = 2.0;
/// Rounding slack: S = +-2 exactly in closed form must not be flagged.
inline constexpr double kBoundSlack = 1e-9;

/// |s| > 2 (beyond rounding)
constexpr bool violates_local_bound(double s) noexcept {
    return s > kLocalBound + kBoundSlack || s < -(kLocalBound + kBoundSlack);
}

struct ReferenceS {
    std::string name;
    double s = 0.0;
    std::optional<double> uncertainty;
};

struct ComparisonRow {
    double theta = 0.0;
    double hv_s = 0.0;
    double qm_s = 0.0;
    std::vector<ReferenceS> references;
    bool hv_violates = false;
    bool qm_violates = false;
    std::optional<double> published_hv_s;
    std::optional<double> published_qm_s;
};

ComparisonRow compare_models(double theta, const PolarizationGrid& grid);

// ---------------------------------------------------------------------------
// Correlator breakdown

struct CorrelatorRow {
    std::string name;
    std::array<std::optional<double>, 4> components;  // E(a,b), E(a,b'), E(a',b), E(a',b')
    double s = 0.0;
    std::optional<double> s_uncertainty;
};

struct BreakdownResult {
    ChshSetting setting;
    CorrelatorRow hv;
    CorrelatorRow qm;  // components always absent
    std::optional<std::array<double, 5>> published_hv;
    std::vector<CorrelatorRow> references;
};

BreakdownResult correlator_breakdown(const ChshSetting& setting, const PolarizationGrid& grid);

// ---------------------------------------------------------------------------
// Per-state matrices

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Rows are filter-A orientations a_i, columns filter-B orientations b_j, both taken
/// from the grid states in order.
struct AppendixTables {
    std::size_t lambda_index = 0;
    AngleDeg lambda;
    std::vector<AngleDeg> orientations;
    Matrix pp;
    Matrix nn;
    Matrix pn;
    Matrix np;
    Matrix e;
};

AppendixTables regenerate_appendix_tables(std::size_t lambda_index, const PolarizationGrid& grid);

// ---------------------------------------------------------------------------
// Plot series

enum class SeriesKind { fig2, fig3 };

/// "fig2" | "fig3"; anything else is a UsageError.
SeriesKind parse_series_kind(std::string_view name);

struct SeriesParams {
    /// fig2: filter-B orientations (grid indices) to sweep against.
    std::vector<std::size_t> b_indices{0, 2, 4, 6, 8};
    /// fig3: polarization states (grid indices), one curve each.
    std::vector<std::size_t> lambda_indices{0, 1, 2, 3};
    /// fig3: fixed filter-B orientation (grid index).
    std::size_t fixed_b_index = 0;
};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // x = filter-A orientation in degrees
};

/// fig2, per b: hv_pp, qm_pp, pp_difference, hv_E, qm_E, difference (hv_E - qm_E).
/// fig3, per lambda: pp over all filter-A orientations.
std::vector<Series> emit_series(SeriesKind kind, const SeriesParams& params, const PolarizationGrid& grid);

// ---------------------------------------------------------------------------
// Report documents

std::string index_label(char prefix, std::size_t index, AngleDeg angle);  // e.g. "a3(22.5)"

report::Document scan_document(const ScanResult& scan, std::size_t grid_states);
report::Document suite_document(const std::vector<PopulationSuiteRow>& rows, std::size_t grid_states);
report::Table individual_summary_table(const std::vector<IndividualSummary>& summary);
report::Document comparison_document(const std::vector<ComparisonRow>& rows, std::size_t grid_states);
report::Document breakdown_document(const BreakdownResult& breakdown, std::size_t grid_states);
report::Document appendix_document(const AppendixTables& tables);
report::Document series_document(SeriesKind kind, const std::vector<Series>& series, std::size_t grid_states);

/// Notes on the correlator normalizations, carried by every model document.
std::vector<std::string> model_notes();

}  // namespace chshlab::bell
