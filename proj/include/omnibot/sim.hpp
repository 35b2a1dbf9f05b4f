#pragma once

#include <string>
#include <vector>

#include "omnibot/actuation.hpp"
#include "omnibot/kinematics.hpp"
#include "omnibot/params.hpp"
#include "omnibot/statespace.hpp"
#include "omnibot/variant.hpp"

namespace omnibot {

enum class Integrator { Rk4, Euler };

struct SimConfig {
    double dt = 1e-3;
    double t_final = 10.0;
    Integrator integrator = Integrator::Rk4;
    Variant variant;
    int record_stride = 10;
};

/// Validates dt > 0, t_final >= dt, record_stride >= 1.
void validate(const SimConfig& cfg);

/// Full simulation state: body-frame velocity plus world-frame pose.
struct BodyState {
    BodyVelocity vel;
    Pose pose;
};

struct TrajectorySample {
    double t = 0.0;
    Pose pose;
    BodyVelocity vel;
    MotorInput input;
    Wrench wrench;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
};

/// Piecewise-constant voltage schedule. Each segment holds from its t_start
/// until the next segment begins; the last segment holds to the end.
struct ScheduleSegment {
    double t_start = 0.0;
    MotorInput u;
};

class InputSchedule {
  public:
    InputSchedule() = default;
    /// Segments must start at t = 0, be strictly increasing in t_start, and
    /// all start before t_final. Throws std::invalid_argument otherwise.
    InputSchedule(std::vector<ScheduleSegment> segments, double t_final);

    MotorInput at(double t) const;
    const std::vector<ScheduleSegment>& segments() const { return segments_; }

    static InputSchedule constant(const MotorInput& u);

  private:
    std::vector<ScheduleSegment> segments_{{0.0, MotorInput{}}};
};

/// Advances velocity one step of x_dot = A x + B u with u held constant,
/// and the pose along with it using the same integrator stages. Throws
/// std::runtime_error if the new state is not finite.
BodyState step(const BodyState& state, const MotorInput& u,
               const RobotParams& params, const SimConfig& cfg);

/// Integrates over [0, t_final] (rounded to a whole number of dt steps),
/// recording every record_stride-th sample including the wrench.
Trajectory simulate(const BodyState& x0, const InputSchedule& schedule,
                    const RobotParams& params, const SimConfig& cfg);

}  // namespace omnibot
