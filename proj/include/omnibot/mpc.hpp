#pragma once

#include <vector>

#include <Eigen/Core>

#include "omnibot/params.hpp"
#include "omnibot/sim.hpp"
#include "omnibot/statespace.hpp"
#include "omnibot/variant.hpp"

namespace omnibot {

struct MpcConfig {
    int horizon = 20;
    double dt = 0.02;
    Eigen::Vector3d state_weights{10.0, 10.0, 10.0};   // diagonal of Q
    Eigen::Vector3d input_weights{0.01, 0.01, 0.01};   // diagonal of R
    double u_max = 24.0;
    double tolerance = 1e-8;
    int max_iterations = 10000;
};

/// Throws std::invalid_argument on the first violated bound (horizon >= 1,
/// dt > 0, Q >= 0, R > 0, u_max > 0, tolerance > 0, max_iterations >= 1).
void validate(const MpcConfig& cfg);

/// Condensed box-constrained QP over the stacked input sequence:
/// minimize 0.5 uᵀHu + gᵀu subject to |u_i| <= u_max.
struct QpProblem {
    Eigen::MatrixXd hessian;   // 3N x 3N, symmetric positive definite
    Eigen::VectorXd gradient;  // 3N
    double u_max = 0.0;        // may be +inf (unconstrained)
};

/// Eliminates the states from the horizon-N tracking problem. With
/// x_{k+1} = Ad^{k+1} x0 + sum_j Ad^{k-j} Bd u_j stacked as Phi·x0 + S·u,
///   H = Sᵀ Q̄ S + R̄,   g = Sᵀ Q̄ (Phi·x0 - ref).
/// The reference must contain exactly one target state per horizon step.
QpProblem condense(const DiscreteStateSpace& ds, const MpcConfig& cfg,
                   const Eigen::Vector3d& x0,
                   const std::vector<Eigen::Vector3d>& reference);

struct QpSolution {
    Eigen::VectorXd u;
    int iterations = 0;
    double residual = 0.0;  // inf-norm of u - proj(u - grad)
    bool converged = false;
};

/// Projected gradient with fixed step 1/L, L = max absolute row sum of H
/// (an upper bound on the largest eigenvalue). Stops when the unit-step
/// projected-gradient residual drops below cfg.tolerance. A non-converged
/// result carries the final residual rather than failing silently.
/// cost_log, when given, receives the objective value at every iterate.
QpSolution solve_qp(const QpProblem& qp, const MpcConfig& cfg,
                    const Eigen::VectorXd* warm_start = nullptr,
                    std::vector<double>* cost_log = nullptr);

/// Piecewise-constant body-velocity reference, same segment semantics as
/// InputSchedule.
struct ReferenceSegment {
    double t_start = 0.0;
    BodyVelocity target;
};

class ReferenceSchedule {
  public:
    ReferenceSchedule() = default;
    ReferenceSchedule(std::vector<ReferenceSegment> segments, double t_final);

    BodyVelocity at(double t) const;
    const std::vector<ReferenceSegment>& segments() const { return segments_; }

    static ReferenceSchedule constant(const BodyVelocity& target);

  private:
    std::vector<ReferenceSegment> segments_{{0.0, BodyVelocity{}}};
};

struct TrackingError {
    double rms = 0.0;
    double max = 0.0;
};

struct SolverStats {
    long steps = 0;
    int max_iterations_per_step = 0;
    double mean_iterations_per_step = 0.0;
    double worst_residual = 0.0;
    bool all_converged = true;
};

struct ClosedLoopResult {
    Trajectory trajectory;
    TrackingError v, vn, omega;
    SolverStats solver;
};

/// Receding-horizon loop: at every control step the QP is solved on the
/// controller's model and the first input is applied to the plant, which is
/// integrated with its own (possibly different) model variant. Tracking
/// error is measured on the post-step states against the reference.
ClosedLoopResult closed_loop(const Variant& plant_variant,
                             const Variant& controller_variant,
                             const ReferenceSchedule& reference,
                             const BodyState& x0, const RobotParams& params,
                             const MpcConfig& cfg, double t_final);

}  // namespace omnibot
