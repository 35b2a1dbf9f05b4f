#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "omnibot/params.hpp"
#include "omnibot/sim.hpp"

namespace omnibot {

struct ChannelStats {
    double max_abs = 0.0;
    double rms = 0.0;
};

/// Channel-wise divergence between two trajectories on the same time grid.
struct DivergenceReport {
    std::string scenario;
    ChannelStats v, vn, omega, x, y, theta;
    double vn_threshold = 1e-3;
    /// First time |delta v_n| exceeds vn_threshold, if it ever does.
    std::optional<double> first_vn_exceedance;
};

/// Computes per-channel max/RMS of (a - b). The trajectories must share an
/// identical time grid; mismatched grids are rejected.
DivergenceReport diff_trajectories(const Trajectory& a, const Trajectory& b,
                                   double vn_threshold = 1e-3,
                                   std::string scenario = "");

nlohmann::json report_to_json(const DivergenceReport& report);

enum class SweepField { WheelRadius, ArmatureResistance };

struct SweepPoint {
    double value;                   // the swept parameter value
    double missing_term_magnitude;  // |a12| = damping·d/M at that value
};

/// Magnitude of the omega coupling term the erroneous model drops, swept
/// over wheel radius (scales as 1/r²) or armature resistance (as 1/R_a).
std::vector<SweepPoint> sensitivity_sweep(const RobotParams& params,
                                          SweepField field,
                                          const std::vector<double>& values);

}  // namespace omnibot
