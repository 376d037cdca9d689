#include "chshlab/hv_model.hpp"

#include "chshlab/errors.hpp"

#include <cmath>
#include <random>

namespace chshlab::hv {

namespace {

double doubled_offset(AngleDeg filter, AngleDeg lambda) {
    return 2.0 * (filter.degrees() - lambda.degrees());
}

void require_states(const PolarizationGrid& grid) {
    if (grid.empty()) {
        throw DomainError("polarization grid is empty");
    }
    if (grid.weights.size() != grid.states.size()) {
        throw DomainError("polarization grid has mismatched state/weight counts");
    }
}

}  // namespace

double pass_projection(AngleDeg filter, AngleDeg lambda) {
    return cos_deg(doubled_offset(filter, lambda));
}

double block_projection(AngleDeg filter, AngleDeg lambda) {
    return sin_deg(doubled_offset(filter, lambda));
}

JointQuantities joint_quantities(AngleDeg a, AngleDeg b, AngleDeg lambda) {
    const CosSin pa = cos_sin_deg(doubled_offset(a, lambda));
    const CosSin pb = cos_sin_deg(doubled_offset(b, lambda));
    return {.pp = pa.cos * pb.cos, .nn = pa.sin * pb.sin, .pn = pa.cos * pb.sin, .np = pa.sin * pb.cos};
}

double expected_value_single(AngleDeg a, AngleDeg b, AngleDeg lambda) {
    return 0.5 * joint_quantities(a, b, lambda).signed_sum();
}

SingleStateResult evaluate_single(AngleDeg a, AngleDeg b, AngleDeg lambda) {
    const JointQuantities joint = joint_quantities(a, b, lambda);
    return {lambda, joint, 0.5 * joint.signed_sum()};
}

double chsh_single(const ChshSetting& setting, AngleDeg lambda) {
    return chsh_combination(expected_value_single(setting.a, setting.b, lambda),
                            expected_value_single(setting.a, setting.b_prime, lambda),
                            expected_value_single(setting.a_prime, setting.b, lambda),
                            expected_value_single(setting.a_prime, setting.b_prime, lambda));
}

JointQuantities ensemble_joint(AngleDeg a, AngleDeg b, const PolarizationGrid& grid) {
    require_states(grid);
    CompensatedSum pp, nn, pn, np;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const JointQuantities q = joint_quantities(a, b, grid.states[k]);
        const double w = grid.weights[k];
        pp.add(w * q.pp);
        nn.add(w * q.nn);
        pn.add(w * q.pn);
        np.add(w * q.np);
    }
    return {pp.value(), nn.value(), pn.value(), np.value()};
}

PopulationResult evaluate_population(AngleDeg a, AngleDeg b, const PolarizationGrid& grid) {
    const JointQuantities mean = ensemble_joint(a, b, grid);
    return {mean, mean.signed_sum()};
}

double expected_value_population(AngleDeg a, AngleDeg b, const PolarizationGrid& grid) {
    return evaluate_population(a, b, grid).expected_value;
}

double chsh_population(const ChshSetting& setting, const PolarizationGrid& grid) {
    return chsh_combination(expected_value_population(setting.a, setting.b, grid),
                            expected_value_population(setting.a, setting.b_prime, grid),
                            expected_value_population(setting.a_prime, setting.b, grid),
                            expected_value_population(setting.a_prime, setting.b_prime, grid));
}

McEstimate mc_expected_value(AngleDeg a, AngleDeg b, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 2) {
        throw DomainError("Monte-Carlo estimate needs at least 2 samples");
    }
    // Explicit 53-bit mantissa construction; std::uniform_real_distribution is not
    // specified bit-for-bit across standard libraries.
    std::mt19937_64 engine(seed);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        const AngleDeg lambda = AngleDeg::normalized(360.0 * u);
        const double x = joint_quantities(a, b, lambda).signed_sum();
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double n = static_cast<double>(samples);
    const double variance = m2 / (n - 1.0);
    return {mean, std::sqrt(variance / n), samples, seed};
}

}  // namespace chshlab::hv
