#pragma once

namespace omnibot {

/// Selects between the corrected dynamics and the legacy model they replace.
///
/// The legacy ("erroneous") model drops the yaw-rate coupling in the lateral
/// force and uses a different yaw damping coefficient. The published value of
/// that coefficient is not known exactly, so it is exposed as a scale factor
/// on the correct yaw damping term (1.0 leaves the term unchanged).
struct Variant {
    enum class Kind { Correct, Erroneous };

    Kind kind = Kind::Correct;
    double torque_scale = 1.0;  // only meaningful for Kind::Erroneous

    static Variant correct() { return {Kind::Correct, 1.0}; }
    static Variant erroneous(double torque_scale = 1.0) {
        return {Kind::Erroneous, torque_scale};
    }

    bool is_correct() const { return kind == Kind::Correct; }
};

}  // namespace omnibot
