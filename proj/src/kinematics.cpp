#include "omnibot/kinematics.hpp"

#include <cmath>

namespace omnibot {

Eigen::Matrix3d projection_matrix(double delta, double d) {
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    Eigen::Matrix3d m;
    m << 0.0, -1.0, 0.0,
         c,    s,   d,
        -c,    s,   d;
    return m;
}

WheelSpeeds body_to_wheels(const BodyVelocity& vel, const RobotParams& params) {
    const double c = std::cos(params.delta);
    const double s = std::sin(params.delta);
    WheelSpeeds ws;
    ws.v1 = -vel.vn;
    ws.v2 = c * vel.v + s * vel.vn + vel.omega * params.d;
    ws.v3 = -c * vel.v + s * vel.vn + vel.omega * params.d;
    return ws;
}

BodyVelocity wheels_to_body(const WheelSpeeds& ws, const RobotParams& params) {
    // Cofactor inverse of the projection matrix:
    //   v     = (v2 - v3) / (2 cos(delta))
    //   v_n   = -v1
    //   omega = sin(delta)·v1/d + (v2 + v3) / (2 d)
    const double c = std::cos(params.delta);
    const double s = std::sin(params.delta);
    BodyVelocity vel;
    vel.v = (ws.v2 - ws.v3) / (2.0 * c);
    vel.vn = -ws.v1;
    vel.omega = (s / params.d) * ws.v1 + (ws.v2 + ws.v3) / (2.0 * params.d);
    return vel;
}

WorldVelocity body_to_world(const Pose& pose, const BodyVelocity& vel) {
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    WorldVelocity w;
    w.x_dot = c * vel.v - s * vel.vn;
    w.y_dot = s * vel.v + c * vel.vn;
    w.theta_dot = vel.omega;
    return w;
}

}  // namespace omnibot
