#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace chshlab {

inline constexpr std::size_t kDefaultGridSize = 32;

/// Orientation or polarization angle in degrees, always held in canonical form [0, 360).
class AngleDeg {
public:
    constexpr AngleDeg() = default;

    /// Wraps any finite value into [0, 360). Throws DomainError on NaN/inf.
    static AngleDeg normalized(double raw);

    constexpr double degrees() const noexcept { return value_; }
    double radians() const noexcept;

    friend constexpr auto operator<=>(AngleDeg, AngleDeg) = default;

private:
    explicit constexpr AngleDeg(double canonical) : value_(canonical) {}
    double value_ = 0.0;
};

AngleDeg normalize_angle(double raw);

/// Canonical difference lhs - rhs.
AngleDeg angle_difference(AngleDeg lhs, AngleDeg rhs);

// Trig with degree arguments. The argument is reduced modulo 360 in degrees
// before the single conversion to radians.
double cos_deg(double degrees);
double sin_deg(double degrees);

struct CosSin {
    double cos = 1.0;
    double sin = 0.0;
};

/// cos_deg and sin_deg of the same argument with one reduction.
CosSin cos_sin_deg(double degrees);

/// Uniformly spaced polarization states over the full circle with a discrete density.
struct PolarizationGrid {
    std::vector<AngleDeg> states;
    std::vector<double> weights;

    std::size_t size() const noexcept { return states.size(); }
    bool empty() const noexcept { return states.empty(); }
    double step_degrees() const noexcept;
};

/// states[k] = k * 360 / n, weights 1/n. n == 0 is a DomainError.
PolarizationGrid make_grid(std::size_t n_states);

/// Polarizer orientations (a, b, a', b') entering S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
struct ChshSetting {
    AngleDeg a;
    AngleDeg b;
    AngleDeg a_prime;
    AngleDeg b_prime;

    static ChshSetting from_degrees(double a, double b, double a_prime, double b_prime);

    friend bool operator==(const ChshSetting&, const ChshSetting&) = default;
};

/// (0, theta, 2 theta, 3 theta): neighbouring orientations all separated by theta.
ChshSetting equal_spacing_setting(double theta_degrees);

/// Combines four correlator values into the CHSH quantity.
constexpr double chsh_combination(double e_ab, double e_abp, double e_apb, double e_apbp) noexcept {
    return e_ab - e_abp + e_apb + e_apbp;
}

/// Signed per-pair correlator contributions: pass/pass, block/block, pass/block, block/pass.
/// These can be negative and are not probabilities.
struct JointQuantities {
    double pp = 0.0;
    double nn = 0.0;
    double pn = 0.0;
    double np = 0.0;

    /// pp + nn - pn - np
    constexpr double signed_sum() const noexcept { return pp + nn - pn - np; }
};

/// Neumaier-compensated accumulator. Summation order is the call order, so a fixed
/// traversal gives bit-identical results run to run.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

}  // namespace chshlab
