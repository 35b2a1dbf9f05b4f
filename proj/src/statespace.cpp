#include "omnibot/statespace.hpp"

#include <cmath>
#include <stdexcept>

#include "omnibot/actuation.hpp"

namespace omnibot {

namespace {

double inf_norm(const Eigen::MatrixXd& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// Body-frame acceleration from the closed-form wrench plus the viscous
// friction terms that only appear in the state-space model.
Eigen::Vector3d acceleration(const MotorInput& u, const BodyVelocity& vel,
                             const RobotParams& p, const Variant& variant) {
    const Wrench w = closed_form_wrench(u, vel, p, variant);
    return {w.f_v / p.mass - p.b_v * vel.v / p.mass,
            w.f_vn / p.mass - p.b_vn * vel.vn / p.mass,
            w.gamma / p.inertia - p.b_omega * vel.omega / p.inertia};
}

}  // namespace

Eigen::Matrix3d build_a(const RobotParams& p, const Variant& variant) {
    const DriveConstants dc = drive_constants(p);
    const double b = p.d;

    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    a(0, 0) = -1.5 * dc.damping / p.mass - p.b_v / p.mass;
    a(1, 1) = -1.5 * dc.damping / p.mass - p.b_vn / p.mass;
    if (variant.is_correct()) {
        a(1, 2) = -dc.damping * p.d / p.mass;
    }
    const double yaw_scale = variant.is_correct() ? 1.0 : variant.torque_scale;
    a(2, 2) = -yaw_scale * 2.0 * dc.damping * b * b / p.inertia -
              p.b_omega / p.inertia;
    return a;
}

Eigen::Matrix3d build_b(const RobotParams& p) {
    const DriveConstants dc = drive_constants(p);
    const double c = std::cos(p.delta);
    const double s = std::sin(p.delta);
    const double b = p.d;

    Eigen::Matrix3d m;
    m << 0.0, dc.gain * c / p.mass, -dc.gain * c / p.mass,
        -dc.gain / p.mass, dc.gain * s / p.mass, dc.gain * s / p.mass,
        b * dc.gain / p.inertia, b * dc.gain / p.inertia,
        b * dc.gain / p.inertia;
    return m;
}

StateSpace make_state_space(const RobotParams& params, const Variant& variant) {
    return {build_a(params, variant), build_b(params), variant};
}

Eigen::Matrix3d linearization_oracle(const RobotParams& params,
                                     const Variant& variant) {
    const double h = 1e-6;
    const MotorInput zero_input{};
    Eigen::Matrix3d jac;
    for (int j = 0; j < 3; ++j) {
        Eigen::Vector3d plus = Eigen::Vector3d::Zero();
        Eigen::Vector3d minus = Eigen::Vector3d::Zero();
        plus[j] = h;
        minus[j] = -h;
        const Eigen::Vector3d fp = acceleration(
            zero_input, BodyVelocity::from_vector(plus), params, variant);
        const Eigen::Vector3d fm = acceleration(
            zero_input, BodyVelocity::from_vector(minus), params, variant);
        jac.col(j) = (fp - fm) / (2.0 * h);
    }
    return jac;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    const double norm = inf_norm(m);

    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Eigen::MatrixXd scaled = m / std::exp2(squarings);

    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 100; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        if (inf_norm(term) < 1e-16 * inf_norm(result)) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

DiscreteStateSpace discretize(const StateSpace& ss, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("discretize: dt must be > 0");
    }
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(6, 6);
    aug.topLeftCorner<3, 3>() = ss.a;
    aug.topRightCorner<3, 3>() = ss.b;

    const Eigen::MatrixXd e = matrix_exponential(aug * dt);
    DiscreteStateSpace ds;
    ds.ad = e.topLeftCorner<3, 3>();
    ds.bd = e.topRightCorner<3, 3>();
    ds.dt = dt;
    return ds;
}

}  // namespace omnibot
