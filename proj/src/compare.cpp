#include "omnibot/compare.hpp"

#include <cmath>
#include <stdexcept>

#include "omnibot/statespace.hpp"

namespace omnibot {

namespace {

class StatsAccumulator {
  public:
    void add(double diff) {
        const double a = std::abs(diff);
        max_abs_ = std::max(max_abs_, a);
        sum_sq_ += diff * diff;
        ++count_;
    }
    ChannelStats finish() const {
        ChannelStats s;
        s.max_abs = max_abs_;
        s.rms = count_ > 0 ? std::sqrt(sum_sq_ / static_cast<double>(count_))
                           : 0.0;
        return s;
    }

  private:
    double max_abs_ = 0.0;
    double sum_sq_ = 0.0;
    std::size_t count_ = 0;
};

nlohmann::json stats_to_json(const ChannelStats& s) {
    return {{"max_abs", s.max_abs}, {"rms", s.rms}};
}

}  // namespace

DivergenceReport diff_trajectories(const Trajectory& a, const Trajectory& b,
                                   double vn_threshold,
                                   std::string scenario) {
    if (a.samples.size() != b.samples.size()) {
        throw std::invalid_argument(
            "diff_trajectories: trajectories have different lengths");
    }
    StatsAccumulator v, vn, omega, x, y, theta;
    DivergenceReport report;
    report.scenario = std::move(scenario);
    report.vn_threshold = vn_threshold;

    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const TrajectorySample& sa = a.samples[i];
        const TrajectorySample& sb = b.samples[i];
        if (sa.t != sb.t) {
            throw std::invalid_argument(
                "diff_trajectories: time grids do not match");
        }
        v.add(sa.vel.v - sb.vel.v);
        const double dvn = sa.vel.vn - sb.vel.vn;
        vn.add(dvn);
        omega.add(sa.vel.omega - sb.vel.omega);
        x.add(sa.pose.x - sb.pose.x);
        y.add(sa.pose.y - sb.pose.y);
        theta.add(sa.pose.theta - sb.pose.theta);
        if (!report.first_vn_exceedance && std::abs(dvn) > vn_threshold) {
            report.first_vn_exceedance = sa.t;
        }
    }
    report.v = v.finish();
    report.vn = vn.finish();
    report.omega = omega.finish();
    report.x = x.finish();
    report.y = y.finish();
    report.theta = theta.finish();
    return report;
}

nlohmann::json report_to_json(const DivergenceReport& report) {
    nlohmann::json channels = {
        {"v", stats_to_json(report.v)},
        {"vn", stats_to_json(report.vn)},
        {"omega", stats_to_json(report.omega)},
        {"x", stats_to_json(report.x)},
        {"y", stats_to_json(report.y)},
        {"theta", stats_to_json(report.theta)}};
    nlohmann::json j = {
        {"scenario", report.scenario},
        {"channels", channels},
        {"vn_threshold", report.vn_threshold}};
    if (report.first_vn_exceedance) {
        j["first_vn_exceedance"] = *report.first_vn_exceedance;
    } else {
        j["first_vn_exceedance"] = nullptr;
    }
    return j;
}

std::vector<SweepPoint> sensitivity_sweep(const RobotParams& params,
                                          SweepField field,
                                          const std::vector<double>& values) {
    std::vector<SweepPoint> table;
    table.reserve(values.size());
    for (double value : values) {
        if (!(value > 0.0)) {
            throw std::invalid_argument(
                "sensitivity_sweep: swept values must be > 0");
        }
        RobotParams p = params;
        if (field == SweepField::WheelRadius) {
            p.r = value;
        } else {
            p.r_a = value;
        }
        const Eigen::Matrix3d a = build_a(p, Variant::correct());
        table.push_back({value, std::abs(a(1, 2))});
    }
    return table;
}

}  // namespace omnibot
