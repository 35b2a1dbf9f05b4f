#include "omnibot/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omnibot {

namespace {

Eigen::VectorXd clamp_to_box(const Eigen::VectorXd& u, double u_max) {
    if (!std::isfinite(u_max)) {
        return u;
    }
    return u.cwiseMax(-u_max).cwiseMin(u_max);
}

}  // namespace

void validate(const MpcConfig& cfg) {
    if (cfg.horizon < 1) {
        throw std::invalid_argument("mpc horizon must be >= 1");
    }
    if (!(cfg.dt > 0.0)) {
        throw std::invalid_argument("mpc dt must be > 0");
    }
    if (!(cfg.state_weights.minCoeff() >= 0.0)) {
        throw std::invalid_argument("mpc state_weights must be >= 0");
    }
    if (!(cfg.input_weights.minCoeff() > 0.0)) {
        throw std::invalid_argument("mpc input_weights must be > 0");
    }
    if (!(cfg.u_max > 0.0)) {
        throw std::invalid_argument("mpc u_max must be > 0");
    }
    if (!(cfg.tolerance > 0.0)) {
        throw std::invalid_argument("mpc tolerance must be > 0");
    }
    if (cfg.max_iterations < 1) {
        throw std::invalid_argument("mpc max_iterations must be >= 1");
    }
}

QpProblem condense(const DiscreteStateSpace& ds, const MpcConfig& cfg,
                   const Eigen::Vector3d& x0,
                   const std::vector<Eigen::Vector3d>& reference) {
    const int n = cfg.horizon;
    if (static_cast<int>(reference.size()) != n) {
        throw std::invalid_argument(
            "condense: reference length must equal the horizon");
    }
    const int dim = 3 * n;

    // Ad^k Bd blocks for the prediction map S, and stacked powers Phi.
    std::vector<Eigen::Matrix3d> ad_pow_b(static_cast<std::size_t>(n));
    ad_pow_b[0] = ds.bd;
    for (int k = 1; k < n; ++k) {
        ad_pow_b[static_cast<std::size_t>(k)] =
            ds.ad * ad_pow_b[static_cast<std::size_t>(k - 1)];
    }

    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd phi(dim, 3);
    Eigen::Matrix3d ad_pow = ds.ad;
    for (int k = 0; k < n; ++k) {
        phi.middleRows<3>(3 * k) = ad_pow;
        ad_pow = ds.ad * ad_pow;
        for (int j = 0; j <= k; ++j) {
            s.block<3, 3>(3 * k, 3 * j) =
                ad_pow_b[static_cast<std::size_t>(k - j)];
        }
    }

    Eigen::VectorXd q_bar(dim), r_bar(dim), ref_stacked(dim);
    for (int k = 0; k < n; ++k) {
        q_bar.segment<3>(3 * k) = cfg.state_weights;
        r_bar.segment<3>(3 * k) = cfg.input_weights;
        ref_stacked.segment<3>(3 * k) = reference[static_cast<std::size_t>(k)];
    }

    QpProblem qp;
    qp.hessian = s.transpose() * q_bar.asDiagonal() * s;
    qp.hessian.diagonal() += r_bar;
    qp.gradient =
        s.transpose() * (q_bar.asDiagonal() * (phi * x0 - ref_stacked));
    qp.u_max = cfg.u_max;
    return qp;
}

QpSolution solve_qp(const QpProblem& qp, const MpcConfig& cfg,
                    const Eigen::VectorXd* warm_start,
                    std::vector<double>* cost_log) {
    const Eigen::Index dim = qp.gradient.size();
    if (qp.hessian.rows() != dim || qp.hessian.cols() != dim) {
        throw std::invalid_argument("solve_qp: H and g dimensions mismatch");
    }
    const double lipschitz = qp.hessian.cwiseAbs().rowwise().sum().maxCoeff();
    const double step = 1.0 / lipschitz;

    QpSolution sol;
    sol.u = warm_start ? clamp_to_box(*warm_start, qp.u_max)
                       : Eigen::VectorXd::Zero(dim);

    for (int it = 0;; ++it) {
        const Eigen::VectorXd grad = qp.hessian * sol.u + qp.gradient;
        if (cost_log) {
            cost_log->push_back(0.5 * sol.u.dot(grad + qp.gradient));
        }
        sol.residual =
            (sol.u - clamp_to_box(sol.u - grad, qp.u_max))
                .cwiseAbs()
                .maxCoeff();
        sol.iterations = it;
        if (sol.residual < cfg.tolerance) {
            sol.converged = true;
            break;
        }
        if (it >= cfg.max_iterations) {
            break;
        }
        sol.u = clamp_to_box(sol.u - step * grad, qp.u_max);
    }
    return sol;
}

ReferenceSchedule::ReferenceSchedule(std::vector<ReferenceSegment> segments,
                                     double t_final)
    : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw std::invalid_argument("reference schedule must have a segment");
    }
    if (segments_.front().t_start != 0.0) {
        throw std::invalid_argument("reference schedule must start at t = 0");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (!(segments_[i].t_start > segments_[i - 1].t_start)) {
            throw std::invalid_argument(
                "reference schedule segments must be strictly increasing in "
                "t_start");
        }
    }
    if (segments_.back().t_start >= t_final) {
        throw std::invalid_argument(
            "reference schedule segment starts at or after t_final");
    }
}

BodyVelocity ReferenceSchedule::at(double t) const {
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double value, const ReferenceSegment& seg) {
            return value < seg.t_start;
        });
    if (it == segments_.begin()) {
        return segments_.front().target;
    }
    return std::prev(it)->target;
}

ReferenceSchedule ReferenceSchedule::constant(const BodyVelocity& target) {
    ReferenceSchedule s;
    s.segments_ = {{0.0, target}};
    return s;
}

ClosedLoopResult closed_loop(const Variant& plant_variant,
                             const Variant& controller_variant,
                             const ReferenceSchedule& reference,
                             const BodyState& x0, const RobotParams& params,
                             const MpcConfig& cfg, double t_final) {
    validate(cfg);
    if (!(t_final >= cfg.dt)) {
        throw std::invalid_argument("closed_loop: t_final must be >= dt");
    }

    const DiscreteStateSpace ds =
        discretize(make_state_space(params, controller_variant), cfg.dt);

    SimConfig plant_cfg;
    plant_cfg.dt = cfg.dt;
    plant_cfg.t_final = cfg.dt;
    plant_cfg.integrator = Integrator::Rk4;
    plant_cfg.variant = plant_variant;
    plant_cfg.record_stride = 1;

    const long n_steps = std::llround(t_final / cfg.dt);
    const int dim = 3 * cfg.horizon;

    ClosedLoopResult result;
    result.trajectory.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.solver.steps = n_steps;

    BodyState state = x0;
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(dim);
    std::vector<Eigen::Vector3d> refs(static_cast<std::size_t>(cfg.horizon));

    double sum_sq_v = 0.0, sum_sq_vn = 0.0, sum_sq_omega = 0.0;
    long total_iterations = 0;
    MotorInput u;

    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        for (int j = 0; j < cfg.horizon; ++j) {
            refs[static_cast<std::size_t>(j)] =
                reference.at(static_cast<double>(k + 1 + j) * cfg.dt)
                    .as_vector();
        }
        const QpProblem qp = condense(ds, cfg, state.vel.as_vector(), refs);
        const QpSolution sol = solve_qp(qp, cfg, &warm);

        total_iterations += sol.iterations;
        result.solver.max_iterations_per_step =
            std::max(result.solver.max_iterations_per_step, sol.iterations);
        result.solver.worst_residual =
            std::max(result.solver.worst_residual, sol.residual);
        result.solver.all_converged =
            result.solver.all_converged && sol.converged;

        u = MotorInput{sol.u[0], sol.u[1], sol.u[2]};
        result.trajectory.samples.push_back(
            {t, state.pose, state.vel, u,
             closed_form_wrench(u, state.vel, params, plant_variant)});

        state = step(state, u, params, plant_cfg);

        const BodyVelocity target =
            reference.at(static_cast<double>(k + 1) * cfg.dt);
        const double ev = state.vel.v - target.v;
        const double evn = state.vel.vn - target.vn;
        const double eomega = state.vel.omega - target.omega;
        sum_sq_v += ev * ev;
        sum_sq_vn += evn * evn;
        sum_sq_omega += eomega * eomega;
        result.v.max = std::max(result.v.max, std::abs(ev));
        result.vn.max = std::max(result.vn.max, std::abs(evn));
        result.omega.max = std::max(result.omega.max, std::abs(eomega));

        // Warm start the next step with the shifted input sequence.
        warm.head(dim - 3) = sol.u.tail(dim - 3);
        warm.tail(3) = sol.u.tail(3);
    }

    result.trajectory.samples.push_back(
        {static_cast<double>(n_steps) * cfg.dt, state.pose, state.vel, u,
         closed_form_wrench(u, state.vel, params, plant_variant)});

    const double n = static_cast<double>(n_steps);
    result.v.rms = std::sqrt(sum_sq_v / n);
    result.vn.rms = std::sqrt(sum_sq_vn / n);
    result.omega.rms = std::sqrt(sum_sq_omega / n);
    result.solver.mean_iterations_per_step =
        static_cast<double>(total_iterations) / n;
    return result;
}

}  // namespace omnibot
