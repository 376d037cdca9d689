#include "chshlab/diffraction.hpp"

#include "chshlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <tuple>

namespace chshlab::diffraction {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// Presentation value in nm, cleaned of binary noise from the SI round trip.
double to_nanometers(double meters) { return std::round(meters * 1e15) / 1e6; }

bool close(double lhs, double rhs, double rel) { return std::fabs(lhs - rhs) <= rel * std::fabs(rhs); }

std::optional<PublishedSpectrumRow> published_match(const DiffractionSetup& setup, const SpectrumRow& row) {
    const DiffractionSetup ref = reference_setup();
    if (!close(setup.slit_spacing_m, ref.slit_spacing_m, 1e-12) ||
        !close(setup.screen_distance_m, ref.screen_distance_m, 1e-12)) {
        return std::nullopt;
    }
    for (const PublishedSpectrumRow& p : published_spectrum()) {
        if (p.order == row.order && close(to_nanometers(row.wavelength_m), p.wavelength_nm, 1e-12)) {
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace

void DiffractionSetup::validate() const {
    if (!positive_finite(slit_spacing_m)) {
        throw DomainError("slit spacing must be positive");
    }
    if (!positive_finite(screen_distance_m)) {
        throw DomainError("screen distance must be positive");
    }
    for (const Wavelength& w : wavelengths) {
        if (!positive_finite(w.meters)) {
            throw DomainError("wavelength '" + w.label + "' must be positive");
        }
    }
}

DiffractionSetup reference_setup() {
    return {1e-5, 2.0, {{"blue", 485e-9}, {"green", 565e-9}, {"red", 750e-9}}, 2};
}

double diffraction_angle(unsigned order, double wavelength_m, double slit_spacing_m) {
    if (!positive_finite(wavelength_m) || !positive_finite(slit_spacing_m)) {
        throw DomainError("wavelength and slit spacing must be positive");
    }
    const double ratio = static_cast<double>(order) * wavelength_m / slit_spacing_m;
    if (ratio > 1.0) {
        throw EvanescentOrderError("order " + std::to_string(order) + " has no propagating maximum (J*lambda/d = " +
                                   report::format_number(ratio) + " > 1)");
    }
    return std::asin(ratio) * kDegPerRad;
}

double screen_position(double theta_degrees, double screen_distance_m) {
    if (!std::isfinite(theta_degrees) || std::fabs(theta_degrees) >= 90.0) {
        throw DomainError("diffraction angle must satisfy |theta| < 90 degrees");
    }
    if (!positive_finite(screen_distance_m)) {
        throw DomainError("screen distance must be positive");
    }
    return screen_distance_m * std::tan(theta_degrees / kDegPerRad) * 100.0;
}

std::vector<SpectrumRow> spectrum(const DiffractionSetup& setup) {
    setup.validate();
    const unsigned first = setup.max_order == 0 ? 0 : 1;
    std::vector<SpectrumRow> rows;
    for (unsigned order = first; order <= setup.max_order; ++order) {
        for (const Wavelength& w : setup.wavelengths) {
            double theta = 0.0;
            try {
                theta = diffraction_angle(order, w.meters, setup.slit_spacing_m);
            } catch (const EvanescentOrderError&) {
                continue;
            }
            rows.push_back({w.label, order, w.meters, theta, screen_position(theta, setup.screen_distance_m)});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SpectrumRow& l, const SpectrumRow& r) {
        return std::tie(l.order, l.wavelength_m) < std::tie(r.order, r.wavelength_m);
    });
    return rows;
}

std::vector<PublishedSpectrumRow> published_spectrum() {
    return {
        {1, 485.0, 2.78, 9.71}, {1, 565.0, 3.24, 11.32}, {1, 750.0, 4.30, 15.04},
        {2, 485.0, 5.57, 19.49}, {2, 565.0, 6.49, 22.75}, {2, 750.0, 8.63, 30.34},
    };
}

report::Document spectrum_document(const DiffractionSetup& setup, const std::vector<SpectrumRow>& rows) {
    using report::Cell;
    report::Document doc;
    doc.metadata = {
        {"slit_spacing_mm", report::format_number(setup.slit_spacing_m * 1e3)},
        {"screen_distance_m", report::format_number(setup.screen_distance_m)},
        {"max_order", std::to_string(setup.max_order)},
    };
    report::Table table{"diffraction_spectrum",
                        "Basic light diffraction: theta = asin(J lambda / d), y = x tan(theta)",
                        {"label", "order", "wavelength_nm", "theta_deg", "y_cm"},
                        {},
                        {}};
    for (const SpectrumRow& row : rows) {
        const auto published = published_match(setup, row);
        table.add_row("J" + std::to_string(row.order) + ":" + row.label,
                      {Cell::text(row.label), Cell::computed(row.order), Cell::computed(to_nanometers(row.wavelength_m)),
                       published ? Cell::compared(row.theta_degrees, published->theta_degrees)
                                 : Cell::computed(row.theta_degrees),
                       published ? Cell::compared(row.y_cm, published->y_cm) : Cell::computed(row.y_cm)});
    }
    doc.tables.push_back(std::move(table));
    return doc;
}

}  // namespace chshlab::diffraction
