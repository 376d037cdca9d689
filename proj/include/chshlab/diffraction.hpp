#pragma once

// Grating / double-slit geometry: angle and screen position of the interference maxima.
// SI units internally; nm, degrees and cm only at the presentation edge.

#include "chshlab/report.hpp"

#include <string>
#include <vector>

namespace chshlab::diffraction {

struct Wavelength {
    std::string label;
    double meters = 0.0;
};

struct DiffractionSetup {
    double slit_spacing_m = 0.0;
    double screen_distance_m = 0.0;
    std::vector<Wavelength> wavelengths;
    unsigned max_order = 1;

    /// Throws DomainError unless every length is positive and finite.
    void validate() const;
};

/// d = 0.01 mm (1000 lines/cm), screen at 2.0 m, 485/565/750 nm, orders 1..2.
DiffractionSetup reference_setup();

/// arcsin(J lambda / d) in degrees. Throws EvanescentOrderError when J lambda / d > 1.
double diffraction_angle(unsigned order, double wavelength_m, double slit_spacing_m);

/// x tan(theta) in centimeters. Throws DomainError when |theta| >= 90.
double screen_position(double theta_degrees, double screen_distance_m);

struct SpectrumRow {
    std::string label;
    unsigned order = 0;
    double wavelength_m = 0.0;
    double theta_degrees = 0.0;
    double y_cm = 0.0;
};

/// Every propagating (wavelength, order) pair, sorted by (order, wavelength). Orders run
/// 1..max_order; max_order == 0 yields only the central maximum. Evanescent orders are
/// dropped.
std::vector<SpectrumRow> spectrum(const DiffractionSetup& setup);

/// Printed angle/position for a reference-setup row, if there is one.
struct PublishedSpectrumRow {
    unsigned order;
    double wavelength_nm;
    double theta_degrees;
    double y_cm;
};

std::vector<PublishedSpectrumRow> published_spectrum();

report::Document spectrum_document(const DiffractionSetup& setup, const std::vector<SpectrumRow>& rows);

}  // namespace chshlab::diffraction
