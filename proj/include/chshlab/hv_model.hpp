#pragma once

// Local polarization model: every photon pair carries a shared polarization angle lambda
// and each filter acts on it through cos/sin of twice the filter-to-polarization angle.

#include "chshlab/core.hpp"

#include <cstdint>
#include <string_view>

namespace chshlab::hv {

/// cos(2 (filter - lambda)).
double pass_projection(AngleDeg filter, AngleDeg lambda);

/// sin(2 (filter - lambda)).
double block_projection(AngleDeg filter, AngleDeg lambda);

JointQuantities joint_quantities(AngleDeg a, AngleDeg b, AngleDeg lambda);

/// Single-state correlator (pp + nn - pn - np) / 2.
///
/// The halving makes a single polarization state's correlator land in [-1, 1]; the
/// population correlator below does not halve.
double expected_value_single(AngleDeg a, AngleDeg b, AngleDeg lambda);

struct SingleStateResult {
    AngleDeg lambda;
    JointQuantities joint;
    double expected_value = 0.0;
};

SingleStateResult evaluate_single(AngleDeg a, AngleDeg b, AngleDeg lambda);

double chsh_single(const ChshSetting& setting, AngleDeg lambda);

/// Weighted mean of joint_quantities over the grid states.
JointQuantities ensemble_joint(AngleDeg a, AngleDeg b, const PolarizationGrid& grid);

/// Population correlator: the undivided combination of the ensemble means,
/// i.e. the grid mean of 2 * expected_value_single. Equals cos(2(a - b)) on any
/// uniform grid with at least 5 states.
double expected_value_population(AngleDeg a, AngleDeg b, const PolarizationGrid& grid);

struct PopulationResult {
    JointQuantities joint_mean;
    double expected_value = 0.0;
};

PopulationResult evaluate_population(AngleDeg a, AngleDeg b, const PolarizationGrid& grid);

double chsh_population(const ChshSetting& setting, const PolarizationGrid& grid);

/// Continuous-lambda Monte-Carlo estimate of the population correlator.
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Identifier of the sampler used by mc_expected_value; written into reports.
inline constexpr std::string_view kMcAlgorithm = "mt19937_64; lambda = 360 * (x >> 11) * 2^-53";

McEstimate mc_expected_value(AngleDeg a, AngleDeg b, std::uint64_t samples, std::uint64_t seed);

}  // namespace chshlab::hv
