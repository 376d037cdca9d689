#include "chshlab/qm_model.hpp"

namespace chshlab::qm {

QmJoint qm_joint(AngleDeg a, AngleDeg b) {
    const double relative = a.degrees() - b.degrees();
    const double c = cos_deg(relative);
    const double s = sin_deg(relative);
    return {0.5 * c * c, 0.5 * s * s};
}

double qm_expected_value(AngleDeg a, AngleDeg b) {
    const QmJoint joint = qm_joint(a, b);
    return 2.0 * (joint.pp - joint.nn);
}

double qm_chsh(const ChshSetting& setting) {
    return chsh_combination(qm_expected_value(setting.a, setting.b),
                            qm_expected_value(setting.a, setting.b_prime),
                            qm_expected_value(setting.a_prime, setting.b),
                            qm_expected_value(setting.a_prime, setting.b_prime));
}

}  // namespace chshlab::qm
