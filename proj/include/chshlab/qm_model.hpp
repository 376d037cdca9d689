#pragma once

#include "chshlab/core.hpp"

namespace chshlab::qm {

/// Closed-form pass/pass and block/block values for the two-photon state.
struct QmJoint {
    double pp = 0.0;  // 1/2 cos^2(a - b)
    double nn = 0.0;  // 1/2 sin^2(a - b)
};

QmJoint qm_joint(AngleDeg a, AngleDeg b);

/// Two-channel correlator cos(2(a - b)) = 2 (pp - nn).
///
/// Only pp and nn have closed forms here. The correlator completes them with
/// pn = np = 1/2 sin^2(a - b) and rescales so that E(a, a) = 1.
double qm_expected_value(AngleDeg a, AngleDeg b);

double qm_chsh(const ChshSetting& setting);

}  // namespace chshlab::qm
