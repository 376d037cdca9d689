#include "chshlab/core.hpp"

#include "chshlab/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace chshlab {

namespace {

constexpr double kFullTurn = 360.0;

double wrap_degrees(double raw) {
    double wrapped = std::fmod(raw, kFullTurn);
    if (wrapped < 0.0) {
        wrapped += kFullTurn;
    }
    // -tiny + 360 rounds to 360 exactly
    if (wrapped >= kFullTurn) {
        wrapped = 0.0;
    }
    // fold -0.0
    return wrapped == 0.0 ? 0.0 : wrapped;
}

double to_radians(double degrees) { return degrees * (std::numbers::pi / 180.0); }

}  // namespace

AngleDeg AngleDeg::normalized(double raw) {
    if (!std::isfinite(raw)) {
        throw DomainError("angle must be finite, got " + std::to_string(raw));
    }
    return AngleDeg(wrap_degrees(raw));
}

double AngleDeg::radians() const noexcept { return to_radians(value_); }

AngleDeg normalize_angle(double raw) { return AngleDeg::normalized(raw); }

AngleDeg angle_difference(AngleDeg lhs, AngleDeg rhs) {
    return AngleDeg::normalized(lhs.degrees() - rhs.degrees());
}

double cos_deg(double degrees) { return std::cos(to_radians(wrap_degrees(degrees))); }

double sin_deg(double degrees) { return std::sin(to_radians(wrap_degrees(degrees))); }

CosSin cos_sin_deg(double degrees) {
    const double r = to_radians(wrap_degrees(degrees));
    return {std::cos(r), std::sin(r)};
}

double PolarizationGrid::step_degrees() const noexcept {
    return states.empty() ? 0.0 : kFullTurn / static_cast<double>(states.size());
}

PolarizationGrid make_grid(std::size_t n_states) {
    if (n_states == 0) {
        throw DomainError("polarization grid needs at least one state");
    }
    PolarizationGrid grid;
    grid.states.reserve(n_states);
    grid.weights.assign(n_states, 1.0 / static_cast<double>(n_states));
    const double n = static_cast<double>(n_states);
    for (std::size_t k = 0; k < n_states; ++k) {
        grid.states.push_back(AngleDeg::normalized(kFullTurn * static_cast<double>(k) / n));
    }
    return grid;
}

ChshSetting ChshSetting::from_degrees(double a, double b, double a_prime, double b_prime) {
    return {AngleDeg::normalized(a), AngleDeg::normalized(b), AngleDeg::normalized(a_prime),
            AngleDeg::normalized(b_prime)};
}

ChshSetting equal_spacing_setting(double theta_degrees) {
    return ChshSetting::from_degrees(0.0, theta_degrees, 2.0 * theta_degrees, 3.0 * theta_degrees);
}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
    CompensatedSum acc;
    for (double v : values) {
        acc.add(v);
    }
    return acc.value();
}

}  // namespace chshlab
