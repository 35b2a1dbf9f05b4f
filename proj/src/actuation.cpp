#include "omnibot/actuation.hpp"

#include <algorithm>
#include <cmath>

namespace omnibot {

MotorInput MotorInput::clamped(double u_max) const {
    auto clip = [u_max](double u) { return std::clamp(u, -u_max, u_max); };
    return {clip(u1), clip(u2), clip(u3)};
}

double motor_current(double u, double wheel_speed, const RobotParams& params) {
    return (u - params.k_t * params.l * wheel_speed / params.r) / params.r_a;
}

double motor_torque(double current, const RobotParams& params) {
    return params.k_t * current;
}

double wheel_torque(double motor_torque, const RobotParams& params) {
    return motor_torque * params.l;
}

double force_from_torque(double wheel_torque, const RobotParams& params) {
    return wheel_torque / params.r;
}

double traction_force(double u, double wheel_speed, const RobotParams& params) {
    const DriveConstants dc = drive_constants(params);
    return dc.gain * u - dc.damping * wheel_speed;
}

WheelForces wheel_forces(const MotorInput& u, const BodyVelocity& vel,
                         const RobotParams& params) {
    const WheelSpeeds ws = body_to_wheels(vel, params);
    WheelForces f;
    f.f1 = traction_force(u.u1, ws.v1, params);
    f.f2 = traction_force(u.u2, ws.v2, params);
    f.f3 = traction_force(u.u3, ws.v3, params);
    return f;
}

Wrench wrench_from_wheel_forces(const WheelForces& f,
                                const RobotParams& params) {
    const double c = std::cos(params.delta);
    const double s = std::sin(params.delta);
    const double b = params.d;
    Wrench w;
    w.f_v = c * (f.f2 - f.f3);
    w.f_vn = -f.f1 + s * (f.f2 + f.f3);
    w.gamma = b * (f.f1 + f.f2 + f.f3);
    return w;
}

Wrench closed_form_wrench(const MotorInput& u, const BodyVelocity& vel,
                          const RobotParams& params, const Variant& variant) {
    const DriveConstants dc = drive_constants(params);
    const double c = std::cos(params.delta);
    const double s = std::sin(params.delta);
    const double b = params.d;

    Wrench w;
    w.f_v = c * dc.gain * (u.u2 - u.u3) - 2.0 * c * c * dc.damping * vel.v;

    const double vn_damping = (1.0 + 2.0 * s * s) * dc.damping * vel.vn;
    const double omega_coupling = 2.0 * s * dc.damping * vel.omega * params.d;
    w.f_vn = dc.gain * (-u.u1 + s * (u.u2 + u.u3)) - vn_damping;
    if (variant.is_correct()) {
        w.f_vn -= omega_coupling;
    }

    const double yaw_scale = variant.is_correct() ? 1.0 : variant.torque_scale;
    w.gamma = b * (dc.gain * (u.u1 + u.u2 + u.u3) +
                   (1.0 - 2.0 * s) * dc.damping * vel.vn -
                   yaw_scale * 2.0 * dc.damping * vel.omega * params.d);
    return w;
}

}  // namespace omnibot
