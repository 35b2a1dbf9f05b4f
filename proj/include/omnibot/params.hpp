#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace omnibot {

/// Physical constants of the three-wheel omnidirectional robot.
///
/// All motors/wheels are assumed identical, so per-wheel quantities collapse
/// to a single value. Units are SI throughout; angles in radians.
struct RobotParams {
    double k_t;      // motor torque constant (= back-EMF constant), N·m/A
    double l;        // gear reduction ratio N_W / N_M, dimensionless
    double r;        // wheel radius, m
    double r_a;      // armature resistance, Ohm
    double d;        // center-to-wheel distance (also called b), m
    double delta;    // wheel-mount half-angle, rad
    double mass;     // robot mass M, kg
    double inertia;  // yaw inertia I_n, kg·m^2
    double b_v;      // viscous friction, longitudinal, N·s/m
    double b_vn;     // viscous friction, lateral, N·s/m
    double b_omega;  // viscous friction, yaw, N·m·s
};

/// Lumped coefficients of the per-wheel traction law
/// f = gain·u − damping·v_wheel.
struct DriveConstants {
    double gain;     // K_t·l / (r·R_a), N/V
    double damping;  // K_t²·l² / (r²·R_a), N·s/m
};

/// Checks all parameter invariants and returns the parameters unchanged.
/// Throws std::invalid_argument naming the first offending field.
RobotParams validate(const RobotParams& params);

/// Derives the lumped drive constants. Expects validated parameters.
DriveConstants drive_constants(const RobotParams& params);

/// Parses a flat JSON object with exactly the RobotParams field names.
/// Unknown or missing keys are an error. Does not validate the values.
RobotParams params_from_json(const nlohmann::json& j);

/// Loads, parses and validates a parameter file.
RobotParams load_params(const std::filesystem::path& path);

nlohmann::json params_to_json(const RobotParams& params);

}  // namespace omnibot
