#pragma once

#include <numbers>
#include <random>

#include "omnibot/params.hpp"

namespace testsupport {

/// All physical constants 1, frictions 0, mount half-angle 30 degrees.
/// Both lumped drive constants are then exactly 1.
inline omnibot::RobotParams unit_params() {
    omnibot::RobotParams p{};
    p.k_t = 1.0;
    p.l = 1.0;
    p.r = 1.0;
    p.r_a = 1.0;
    p.d = 1.0;
    p.delta = std::numbers::pi / 6.0;
    p.mass = 1.0;
    p.inertia = 1.0;
    p.b_v = 0.0;
    p.b_vn = 0.0;
    p.b_omega = 0.0;
    return p;
}

/// Asymmetric but well-conditioned parameter set for property tests.
inline omnibot::RobotParams mixed_params() {
    omnibot::RobotParams p = unit_params();
    p.k_t = 0.0259;
    p.l = 12.0;
    p.r = 0.035;
    p.r_a = 1.71;
    p.d = 0.19;
    p.delta = std::numbers::pi / 6.0;
    p.mass = 1.5;
    p.inertia = 0.05;
    p.b_v = 0.3;
    p.b_vn = 0.25;
    p.b_omega = 0.02;
    return p;
}

}  // namespace testsupport
