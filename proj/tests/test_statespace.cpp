#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "omnibot/actuation.hpp"
#include "omnibot/statespace.hpp"
#include "support.hpp"

using namespace omnibot;
using testsupport::mixed_params;
using testsupport::unit_params;

namespace {

/// Fixed-step RK4 propagation of Y' = M Y from the identity over [0, t].
Eigen::MatrixXd rk4_expm(const Eigen::MatrixXd& m, double t, int steps) {
    const double h = t / steps;
    Eigen::MatrixXd y =
        Eigen::MatrixXd::Identity(m.rows(), m.cols());
    for (int i = 0; i < steps; ++i) {
        const Eigen::MatrixXd k1 = m * y;
        const Eigen::MatrixXd k2 = m * (y + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = m * (y + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = m * (y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

}  // namespace

TEST_CASE("A matrix with unit parameters matches the closed form") {
    const Eigen::Matrix3d a = build_a(unit_params(), Variant::correct());
    Eigen::Matrix3d expect;
    expect << -1.5, 0.0, 0.0,
               0.0, -1.5, -1.0,
               0.0, 0.0, -2.0;
    CHECK((a - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("legacy A matrix zeroes the lateral yaw coupling") {
    const Eigen::Matrix3d a = build_a(unit_params(), Variant::erroneous());
    Eigen::Matrix3d expect;
    expect << -1.5, 0.0, 0.0,
               0.0, -1.5, 0.0,
               0.0, 0.0, -2.0;
    CHECK((a - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("friction terms add onto the drive damping diagonally") {
    RobotParams p = unit_params();
    p.b_v = 1.0;
    p.b_vn = 2.0;
    p.b_omega = 3.0;
    p.mass = 2.0;
    p.inertia = 3.0;
    const Eigen::Matrix3d a = build_a(p, Variant::correct());
    // Drive part: (-0.75, -0.75, -2/3); friction part: (-0.5, -1, -1).
    CHECK(a(0, 0) == doctest::Approx(-1.25).epsilon(1e-15));
    CHECK(a(1, 1) == doctest::Approx(-1.75).epsilon(1e-15));
    CHECK(a(2, 2) == doctest::Approx(-2.0 / 3.0 - 1.0).epsilon(1e-15));
    CHECK(a(1, 2) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("A is upper triangular with a strictly negative diagonal") {
    for (const Variant& v : {Variant::correct(), Variant::erroneous(0.7)}) {
        const Eigen::Matrix3d a = build_a(mixed_params(), v);
        CHECK(a(0, 1) == 0.0);
        CHECK(a(0, 2) == 0.0);
        CHECK(a(1, 0) == 0.0);
        CHECK(a(2, 0) == 0.0);
        CHECK(a(2, 1) == 0.0);
        CHECK(a.diagonal().maxCoeff() < 0.0);
    }
}

TEST_CASE("equal v and v_n frictions give equal first two diagonal entries") {
    RobotParams p = mixed_params();
    p.b_v = p.b_vn = 0.4;
    const Eigen::Matrix3d a = build_a(p, Variant::correct());
    CHECK(a(0, 0) == a(1, 1));
}

TEST_CASE("correct-minus-legacy difference is a single entry at scale 1") {
    const RobotParams p = mixed_params();
    const DriveConstants dc = drive_constants(p);
    const Eigen::Matrix3d diff = build_a(p, Variant::correct()) -
                                 build_a(p, Variant::erroneous(1.0));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == 1 && j == 2) {
                CHECK(diff(i, j) ==
                      doctest::Approx(-dc.damping * p.d / p.mass)
                          .epsilon(1e-15));
            } else {
                CHECK(diff(i, j) == 0.0);
            }
        }
    }
}

TEST_CASE("B matrix with unit parameters") {
    const Eigen::Matrix3d b = build_b(unit_params());
    const double c = std::sqrt(3.0) / 2.0;
    CHECK(b(0, 0) == 0.0);
    CHECK(b(0, 1) == doctest::Approx(c).epsilon(1e-15));
    CHECK(b(0, 2) == doctest::Approx(-c).epsilon(1e-15));
    CHECK(b(1, 0) == -1.0);
    CHECK(b(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b(1, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b(2, 0) == 1.0);
    CHECK(b(2, 1) == 1.0);
    CHECK(b(2, 2) == 1.0);
}

TEST_CASE("symmetric voltages drive only the yaw row of B") {
    const RobotParams p = mixed_params();
    const DriveConstants dc = drive_constants(p);
    const Eigen::Vector3d bu = build_b(p) * Eigen::Vector3d::Ones();
    CHECK(std::abs(bu[0]) < 1e-15);
    CHECK(std::abs(bu[1]) < 1e-12);
    CHECK(bu[2] ==
          doctest::Approx(3.0 * p.d * dc.gain / p.inertia).epsilon(1e-13));
}

TEST_CASE("A x + B u equals the wrench-based acceleration at 30 degrees") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (const Variant& variant :
         {Variant::correct(), Variant::erroneous(0.6)}) {
        const RobotParams p = mixed_params();
        const StateSpace ss = make_state_space(p, variant);
        for (int i = 0; i < 300; ++i) {
            const BodyVelocity vel{dist(gen), dist(gen), dist(gen)};
            const MotorInput u{dist(gen), dist(gen), dist(gen)};
            const Eigen::Vector3d model =
                ss.a * vel.as_vector() +
                ss.b * Eigen::Vector3d(u.u1, u.u2, u.u3);
            const Wrench w = closed_form_wrench(u, vel, p, variant);
            const Eigen::Vector3d accel{
                w.f_v / p.mass - p.b_v * vel.v / p.mass,
                w.f_vn / p.mass - p.b_vn * vel.vn / p.mass,
                w.gamma / p.inertia - p.b_omega * vel.omega / p.inertia};
            CHECK((model - accel).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("finite-difference oracle agrees with build_a for both variants") {
    for (const RobotParams& p : {unit_params(), mixed_params()}) {
        for (const Variant& v :
             {Variant::correct(), Variant::erroneous(0.5)}) {
            const Eigen::Matrix3d a = build_a(p, v);
            const Eigen::Matrix3d fd = linearization_oracle(p, v);
            CHECK((a - fd).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("oracle variant difference sits exactly at (1,2) and (2,2)") {
    const RobotParams p = unit_params();
    const Eigen::Matrix3d diff =
        linearization_oracle(p, Variant::correct()) -
        linearization_oracle(p, Variant::erroneous(0.5));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if ((i == 1 && j == 2) || (i == 2 && j == 2)) {
                CHECK(std::abs(diff(i, j)) > 0.1);
            } else {
                CHECK(diff(i, j) == 0.0);
            }
        }
    }
}

TEST_CASE("discretize rejects non-positive sampling times") {
    const StateSpace ss = make_state_space(unit_params(), Variant::correct());
    CHECK_THROWS_AS(discretize(ss, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(discretize(ss, -0.1), std::invalid_argument);
}

TEST_CASE("zero A discretizes to identity and dt-scaled B") {
    StateSpace ss = make_state_space(unit_params(), Variant::correct());
    ss.a.setZero();
    const double dt = 0.37;
    const DiscreteStateSpace ds = discretize(ss, dt);
    CHECK((ds.ad - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ds.bd - dt * ss.b).cwiseAbs().maxCoeff() < 1e-16);
}

TEST_CASE("diagonal entries of Ad are scalar exponentials") {
    const RobotParams p = mixed_params();
    const StateSpace ss = make_state_space(p, Variant::correct());
    const double dt = 0.05;
    const DiscreteStateSpace ds = discretize(ss, dt);
    for (int i = 0; i < 3; ++i) {
        CHECK(ds.ad(i, i) ==
              doctest::Approx(std::exp(ss.a(i, i) * dt)).epsilon(1e-12));
    }
    // Lower triangle stays structurally zero under the exponential.
    CHECK(std::abs(ds.ad(1, 0)) < 1e-15);
    CHECK(std::abs(ds.ad(2, 0)) < 1e-15);
    CHECK(std::abs(ds.ad(2, 1)) < 1e-15);
}

TEST_CASE("Ad approaches identity as dt goes to zero") {
    const StateSpace ss = make_state_space(mixed_params(), Variant::correct());
    const DiscreteStateSpace ds = discretize(ss, 1e-9);
    CHECK((ds.ad - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("discretization satisfies the semigroup property") {
    const StateSpace ss = make_state_space(mixed_params(), Variant::correct());
    const DiscreteStateSpace d1 = discretize(ss, 0.03);
    const DiscreteStateSpace d2 = discretize(ss, 0.07);
    const DiscreteStateSpace d3 = discretize(ss, 0.1);
    CHECK((d3.ad - d2.ad * d1.ad).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("matrix exponential matches dense RK4 propagation") {
    const StateSpace ss = make_state_space(unit_params(), Variant::correct());
    const double dt = 0.7;

    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(6, 6);
    aug.topLeftCorner<3, 3>() = ss.a;
    aug.topRightCorner<3, 3>() = ss.b;

    const Eigen::MatrixXd oracle = rk4_expm(aug * dt, 1.0, 10000);
    const DiscreteStateSpace ds = discretize(ss, dt);
    CHECK((ds.ad - oracle.topLeftCorner<3, 3>()).cwiseAbs().maxCoeff() <
          1e-9);
    CHECK((ds.bd - oracle.topRightCorner<3, 3>()).cwiseAbs().maxCoeff() <
          1e-9);
}

TEST_CASE("matrix exponential handles a rotation generator") {
    // exp([[0,-t],[t,0]]) is the rotation by t: an independent closed form.
    const double t = 1.234;
    Eigen::MatrixXd m(2, 2);
    m << 0.0, -t, t, 0.0;
    const Eigen::MatrixXd e = matrix_exponential(m);
    CHECK(e(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-13));
    CHECK(e(0, 1) == doctest::Approx(-std::sin(t)).epsilon(1e-13));
    CHECK(e(1, 0) == doctest::Approx(std::sin(t)).epsilon(1e-13));
    CHECK(e(1, 1) == doctest::Approx(std::cos(t)).epsilon(1e-13));
}
