#include "chshlab/diffraction.hpp"
#include "chshlab/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace chshlab;
using namespace chshlab::diffraction;

TEST_CASE("reference spectrum against frozen values") {
    const std::vector<SpectrumRow> rows = spectrum(reference_setup());
    REQUIRE(rows.size() == 6);
    const double theta[] = {2.77993588432, 3.23893635278, 4.30122230467, 5.56644310731, 6.48828151623, 8.62692655868};
    const double y[] = {9.71142857861, 11.3180795098, 15.0423663169, 19.4919164423, 22.7456863964, 30.3433042455};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].theta_degrees == doctest::Approx(theta[i]).epsilon(1e-10));
        CHECK(rows[i].y_cm == doctest::Approx(y[i]).epsilon(1e-10));
    }
    CHECK(rows[0].order == 1);
    CHECK(rows[3].order == 2);
    CHECK(rows[2].label == "red");
}

TEST_CASE("published rows within tolerance") {
    const std::vector<SpectrumRow> rows = spectrum(reference_setup());
    const auto published = published_spectrum();
    REQUIRE(published.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(std::abs(rows[i].theta_degrees - published[i].theta_degrees) <= 0.01);
        CHECK(std::abs(rows[i].y_cm - published[i].y_cm) <= 0.02);
    }
}

TEST_CASE("evanescent orders") {
    CHECK_THROWS_AS(diffraction_angle(2, 750e-9, 1e-6), EvanescentOrderError);
    CHECK(diffraction_angle(1, 750e-9, 1e-6) == doctest::Approx(48.5903778907));
    CHECK(diffraction_angle(1, 1e-6, 1e-6) == doctest::Approx(90.0));
    DiffractionSetup tight = reference_setup();
    tight.slit_spacing_m = 1e-6;
    tight.wavelengths = {{"red", 750e-9}};
    const auto rows = spectrum(tight);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].order == 1);
    // 2 x 485 nm still fits inside 1 um
    tight.wavelengths = reference_setup().wavelengths;
    CHECK(spectrum(tight).size() == 4);
}

TEST_CASE("central maximum only for order zero") {
    DiffractionSetup s = reference_setup();
    s.max_order = 0;
    const auto rows = spectrum(s);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.order == 0);
        CHECK(r.theta_degrees == 0.0);
        CHECK(r.y_cm == 0.0);
    }
}

TEST_CASE("invalid geometry") {
    CHECK_THROWS_AS(screen_position(90.0, 2.0), DomainError);
    CHECK_THROWS_AS(screen_position(-95.0, 2.0), DomainError);
    CHECK_THROWS_AS(diffraction_angle(1, -1e-7, 1e-5), DomainError);
    DiffractionSetup s = reference_setup();
    s.slit_spacing_m = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    CHECK_NOTHROW(reference_setup().validate());
}

TEST_CASE("property: monotone in order and wavelength, and inverts") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> wl(380e-9, 780e-9);
    for (int i = 0; i < 2000; ++i) {
        const double l1 = wl(rng), l2 = wl(rng);
        const double lo = std::min(l1, l2), hi = std::max(l1, l2);
        const double d = 1e-5;
        REQUIRE(diffraction_angle(1, lo, d) <= diffraction_angle(1, hi, d));
        REQUIRE(diffraction_angle(1, lo, d) < diffraction_angle(2, lo, d));
        const double theta = diffraction_angle(2, lo, d);
        REQUIRE(std::abs(d * std::sin(theta * M_PI / 180.0) / 2.0 - lo) < 1e-18);
        const double y = screen_position(theta, 2.0);
        REQUIRE(std::abs(std::atan(y / 200.0) * 180.0 / M_PI - theta) < 1e-10);
    }
}
