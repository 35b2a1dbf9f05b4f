#pragma once

#include "omnibot/kinematics.hpp"
#include "omnibot/params.hpp"
#include "omnibot/variant.hpp"

namespace omnibot {

/// Armature voltages of the three drive motors, V.
struct MotorInput {
    double u1 = 0.0;
    double u2 = 0.0;
    double u3 = 0.0;

    /// Symmetric saturation to [-u_max, u_max].
    MotorInput clamped(double u_max) const;
};

/// Traction force per wheel along its drive direction, N.
struct WheelForces {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
};

/// Net body-frame generalized force: longitudinal, lateral, yaw torque.
struct Wrench {
    double f_v = 0.0;
    double f_vn = 0.0;
    double gamma = 0.0;
};

// DC motor chain, armature inductance neglected (no current state).

/// Armature current i = (u - K_t·l·v_wheel/r) / R_a.
double motor_current(double u, double wheel_speed, const RobotParams& params);

/// Motor torque T_M = K_t·i.
double motor_torque(double current, const RobotParams& params);

/// Torque after the gear stage, T_W = T_M·l.
double wheel_torque(double motor_torque, const RobotParams& params);

/// Ground contact force f = T_W / r.
double force_from_torque(double wheel_torque, const RobotParams& params);

/// Lumped traction law f = gain·u - damping·v_wheel. Composing the four
/// chain functions above reproduces this exactly.
double traction_force(double u, double wheel_speed, const RobotParams& params);

/// Per-wheel traction forces for a body-frame velocity state: each wheel
/// sees the projected wheel speed from body_to_wheels.
WheelForces wheel_forces(const MotorInput& u, const BodyVelocity& vel,
                         const RobotParams& params);

/// Aggregates wheel forces into the body wrench:
///   F_v  = cos(delta)·(f2 - f3)
///   F_vn = -f1 + sin(delta)·(f2 + f3)
///   Gamma = b·(f1 + f2 + f3),  b = d
Wrench wrench_from_wheel_forces(const WheelForces& f, const RobotParams& params);

/// Closed-form wrench directly in terms of voltages and the body state.
/// For the correct variant this is algebraically identical to
/// wrench_from_wheel_forces(wheel_forces(...)) at any mount angle; the
/// erroneous variant drops the omega coupling in F_vn and scales the omega
/// term of Gamma by variant.torque_scale.
Wrench closed_form_wrench(const MotorInput& u, const BodyVelocity& vel,
                          const RobotParams& params, const Variant& variant);

}  // namespace omnibot
