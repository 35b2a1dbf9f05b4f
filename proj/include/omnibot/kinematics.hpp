#pragma once

#include <Eigen/Core>

#include "omnibot/params.hpp"

namespace omnibot {

/// Body-frame velocity: longitudinal v, lateral v_n, yaw rate omega.
struct BodyVelocity {
    double v = 0.0;
    double vn = 0.0;
    double omega = 0.0;

    Eigen::Vector3d as_vector() const { return {v, vn, omega}; }
    static BodyVelocity from_vector(const Eigen::Vector3d& x) {
        return {x[0], x[1], x[2]};
    }
};

/// Translational speed of each wheel along its drive direction.
struct WheelSpeeds {
    double v1 = 0.0;
    double v2 = 0.0;
    double v3 = 0.0;
};

/// Planar pose in the world frame.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

/// World-frame velocity (x_dot, y_dot, theta_dot).
struct WorldVelocity {
    double x_dot = 0.0;
    double y_dot = 0.0;
    double theta_dot = 0.0;
};

/// The 3x3 map from body velocity (v, v_n, omega) to wheel speeds:
///
///   [ 0        -1        0 ]
///   [ cos(d)    sin(d)   d ]
///   [ -cos(d)   sin(d)   d ]
///
/// Wheel 1 drives purely along -v_n and picks up no omega·d term; wheels 2
/// and 3 sit symmetrically at the mount half-angle delta.
Eigen::Matrix3d projection_matrix(double delta, double d);

WheelSpeeds body_to_wheels(const BodyVelocity& vel, const RobotParams& params);

/// Inverse of body_to_wheels via the closed-form 3x3 inverse. Well-defined
/// for all valid parameters (|det| = 2·d·cos(delta) > 0).
BodyVelocity wheels_to_body(const WheelSpeeds& ws, const RobotParams& params);

/// Rotates the body-frame velocity into the world frame; theta_dot = omega.
WorldVelocity body_to_world(const Pose& pose, const BodyVelocity& vel);

}  // namespace omnibot
