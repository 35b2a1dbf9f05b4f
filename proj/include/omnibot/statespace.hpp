#pragma once

#include <Eigen/Core>

#include "omnibot/params.hpp"
#include "omnibot/variant.hpp"

namespace omnibot {

/// Continuous-time linear model x_dot = A x + B u with state (v, v_n, omega)
/// and input (u1, u2, u3).
struct StateSpace {
    Eigen::Matrix3d a;
    Eigen::Matrix3d b;
    Variant variant;
};

/// Zero-order-hold discretization of a StateSpace.
struct DiscreteStateSpace {
    Eigen::Matrix3d ad;
    Eigen::Matrix3d bd;
    double dt = 0.0;
};

/// System matrix for the 30-degree wheel layout, where the velocity damping
/// coefficients reduce to closed numbers:
///
///   a00 = -(3/2)·damping/M  - B_v/M
///   a11 = -(3/2)·damping/M  - B_vn/M
///   a12 = -damping·d/M                  (omega coupling into v_n)
///   a22 = -2·damping·b²/I_n - B_omega/I_n
///
/// with all other entries zero ("damping" is the lumped drive constant
/// K_t²l²/(r²R_a) and b = d). The erroneous variant zeroes a12 and scales
/// the damping part of a22 by variant.torque_scale.
Eigen::Matrix3d build_a(const RobotParams& params, const Variant& variant);

/// Input matrix at the general mount angle delta:
///
///   B = diag(1/M, 1/M, b/I_n) · [ 0      gain·cos(d)  -gain·cos(d) ]
///                               [ -gain  gain·sin(d)   gain·sin(d) ]
///                               [ gain   gain          gain        ]
Eigen::Matrix3d build_b(const RobotParams& params);

StateSpace make_state_space(const RobotParams& params, const Variant& variant);

/// Independent check of build_a: central finite differences (h = 1e-6) of
/// the wrench-based acceleration map at the origin. The acceleration is
/// linear in the state, so agreement is limited only by rounding.
Eigen::Matrix3d linearization_oracle(const RobotParams& params,
                                     const Variant& variant);

/// Matrix exponential by scaling-and-squaring with a truncated Taylor
/// series; terms are accumulated until the next term's infinity norm drops
/// below 1e-16 of the accumulated norm.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m);

/// Exact zero-order-hold discretization via the augmented-matrix
/// exponential: exp([A B; 0 0]·dt) = [Ad Bd; 0 I]. Throws on dt <= 0.
DiscreteStateSpace discretize(const StateSpace& ss, double dt);

}  // namespace omnibot
