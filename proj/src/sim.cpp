#include "omnibot/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omnibot {

namespace {

using Vector6d = Eigen::Matrix<double, 6, 1>;

Vector6d pack(const BodyState& s) {
    Vector6d y;
    y << s.vel.v, s.vel.vn, s.vel.omega, s.pose.x, s.pose.y, s.pose.theta;
    return y;
}

BodyState unpack(const Vector6d& y) {
    return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
}

// Right-hand side of the coupled velocity/pose ODE.
Vector6d deriv(const Vector6d& y, const Eigen::Matrix3d& a,
               const Eigen::Matrix3d& b, const Eigen::Vector3d& u) {
    const Eigen::Vector3d vel = y.head<3>();
    const Eigen::Vector3d accel = a * vel + b * u;
    const double c = std::cos(y[5]);
    const double s = std::sin(y[5]);
    Vector6d dy;
    dy << accel[0], accel[1], accel[2],
        c * y[0] - s * y[1], s * y[0] + c * y[1], y[2];
    return dy;
}

Vector6d advance(const Vector6d& y, const Eigen::Matrix3d& a,
                 const Eigen::Matrix3d& b, const Eigen::Vector3d& u,
                 double dt, Integrator integrator) {
    if (integrator == Integrator::Euler) {
        return y + dt * deriv(y, a, b, u);
    }
    const Vector6d k1 = deriv(y, a, b, u);
    const Vector6d k2 = deriv(y + 0.5 * dt * k1, a, b, u);
    const Vector6d k3 = deriv(y + 0.5 * dt * k2, a, b, u);
    const Vector6d k4 = deriv(y + dt * k3, a, b, u);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_finite(const Vector6d& y, double t) {
    if (!y.allFinite()) {
        throw std::runtime_error(
            "simulation state became non-finite at t = " + std::to_string(t) +
            " (check parameters and inputs)");
    }
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0)) {
        throw std::invalid_argument("sim dt must be > 0");
    }
    if (!(cfg.t_final >= cfg.dt)) {
        throw std::invalid_argument("sim t_final must be >= dt");
    }
    if (cfg.record_stride < 1) {
        throw std::invalid_argument("sim record_stride must be >= 1");
    }
}

InputSchedule::InputSchedule(std::vector<ScheduleSegment> segments,
                             double t_final)
    : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw std::invalid_argument("input schedule must have a segment");
    }
    if (segments_.front().t_start != 0.0) {
        throw std::invalid_argument(
            "input schedule must start at t = 0 (no gap at the beginning)");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (!(segments_[i].t_start > segments_[i - 1].t_start)) {
            throw std::invalid_argument(
                "input schedule segments must be strictly increasing in "
                "t_start");
        }
    }
    if (segments_.back().t_start >= t_final) {
        throw std::invalid_argument(
            "input schedule segment starts at or after t_final");
    }
}

MotorInput InputSchedule::at(double t) const {
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double value, const ScheduleSegment& seg) {
            return value < seg.t_start;
        });
    if (it == segments_.begin()) {
        return segments_.front().u;
    }
    return std::prev(it)->u;
}

InputSchedule InputSchedule::constant(const MotorInput& u) {
    InputSchedule s;
    s.segments_ = {{0.0, u}};
    return s;
}

BodyState step(const BodyState& state, const MotorInput& u,
               const RobotParams& params, const SimConfig& cfg) {
    const StateSpace ss = make_state_space(params, cfg.variant);
    const Eigen::Vector3d uv(u.u1, u.u2, u.u3);
    const Vector6d y =
        advance(pack(state), ss.a, ss.b, uv, cfg.dt, cfg.integrator);
    if (!y.allFinite()) {
        throw std::runtime_error(
            "simulation step produced a non-finite state (check parameters "
            "and inputs)");
    }
    return unpack(y);
}

Trajectory simulate(const BodyState& x0, const InputSchedule& schedule,
                    const RobotParams& params, const SimConfig& cfg) {
    validate(cfg);
    const StateSpace ss = make_state_space(params, cfg.variant);

    const long n_steps = std::llround(cfg.t_final / cfg.dt);
    Trajectory traj;
    traj.samples.reserve(static_cast<std::size_t>(n_steps / cfg.record_stride) + 2);

    auto record = [&](long k, const Vector6d& y) {
        const double t = static_cast<double>(k) * cfg.dt;
        const MotorInput u = schedule.at(t);
        const BodyState s = unpack(y);
        traj.samples.push_back(
            {t, s.pose, s.vel, u,
             closed_form_wrench(u, s.vel, params, cfg.variant)});
    };

    Vector6d y = pack(x0);
    record(0, y);
    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const MotorInput u = schedule.at(t);
        const Eigen::Vector3d uv(u.u1, u.u2, u.u3);
        y = advance(y, ss.a, ss.b, uv, cfg.dt, cfg.integrator);
        check_finite(y, t + cfg.dt);
        if ((k + 1) % cfg.record_stride == 0) {
            record(k + 1, y);
        }
    }
    return traj;
}

}  // namespace omnibot
