// omnibot — command-line front end for the omnidirectional-robot dynamics
// library. Subcommands build the state-space matrices, run open-loop
// simulations, compare the correct model against the legacy variant, and
// run closed-loop MPC experiments. All outputs are deterministic.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "omnibot/compare.hpp"
#include "omnibot/io.hpp"
#include "omnibot/mpc.hpp"
#include "omnibot/params.hpp"
#include "omnibot/scenario.hpp"
#include "omnibot/sim.hpp"
#include "omnibot/statespace.hpp"
#include "omnibot/variant.hpp"

namespace {

using namespace omnibot;

nlohmann::json matrix_to_json(const Eigen::Matrix3d& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 3; ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

Variant make_variant(Variant::Kind kind, double torque_scale) {
    return kind == Variant::Kind::Correct ? Variant::correct()
                                          : Variant::erroneous(torque_scale);
}

const char* variant_name(const Variant& v) {
    return v.is_correct() ? "correct" : "erroneous";
}

std::vector<Variant> variants_to_run(VariantSelect select, double torque_scale) {
    switch (select) {
        case VariantSelect::Correct:
            return {Variant::correct()};
        case VariantSelect::Erroneous:
            return {Variant::erroneous(torque_scale)};
        default:
            return {Variant::correct(), Variant::erroneous(torque_scale)};
    }
}

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir;           // empty: scenario's out_dir, else cwd
    std::string variant_override;  // empty: use the scenario's selection
    double torque_scale = 1.0;
    bool torque_scale_set = false;
};

void add_scenario_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir,
                    "output directory (default: scenario out_dir or cwd)");
    cmd->add_option("--variant", args.variant_override,
                    "model variant override: correct|erroneous|both")
        ->check(CLI::IsMember({"correct", "erroneous", "both"}));
    cmd->add_option("--torque-scale", args.torque_scale,
                    "yaw damping scale of the erroneous variant")
        ->each([&args](const std::string&) { args.torque_scale_set = true; });
}

/// Applies CLI overrides and resolves the output directory, creating it if
/// needed. Returns the scenario with its parameter file loaded.
struct ResolvedScenario {
    ScenarioSpec spec;
    RobotParams params;
    std::filesystem::path out;
};

ResolvedScenario resolve(const CommonArgs& args) {
    ResolvedScenario r;
    r.spec = load_scenario(args.scenario_path);
    if (!args.variant_override.empty()) {
        r.spec.variant = variant_select_from_string(args.variant_override);
    }
    if (args.torque_scale_set) {
        r.spec.torque_scale = args.torque_scale;
    }
    r.params = load_params(r.spec.params_path);
    if (!args.out_dir.empty()) {
        r.out = args.out_dir;
    } else if (!r.spec.out_dir.empty()) {
        r.out = r.spec.out_dir;
    } else {
        r.out = ".";
    }
    std::filesystem::create_directories(r.out);
    return r;
}

int cmd_matrices(const std::string& params_path, const std::string& variant,
                 double torque_scale, std::optional<double> dt) {
    const RobotParams params = load_params(params_path);
    nlohmann::json out;
    for (const Variant& v :
         variants_to_run(variant_select_from_string(variant), torque_scale)) {
        const StateSpace ss = make_state_space(params, v);
        nlohmann::json entry;
        entry["a"] = matrix_to_json(ss.a);
        entry["b"] = matrix_to_json(ss.b);
        if (dt) {
            const DiscreteStateSpace ds = discretize(ss, *dt);
            entry["ad"] = matrix_to_json(ds.ad);
            entry["bd"] = matrix_to_json(ds.bd);
            entry["dt"] = ds.dt;
        }
        out[variant_name(v)] = entry;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    ResolvedScenario r = resolve(args);
    if (!r.spec.sim) {
        throw std::invalid_argument("scenario '" + r.spec.name +
                                    "' has no sim section");
    }
    for (const Variant& v :
         variants_to_run(r.spec.variant, r.spec.torque_scale)) {
        SimConfig cfg = r.spec.sim->cfg;
        cfg.variant = v;
        const Trajectory traj = simulate(r.spec.sim->initial_state,
                                         r.spec.sim->schedule, r.params, cfg);
        const std::filesystem::path path =
            r.out / (r.spec.name + "_" + variant_name(v) + ".csv");
        write_file_atomic(path, trajectory_to_csv(traj));
        std::cout << path.string() << '\n';
    }
    return 0;
}

int cmd_compare(const CommonArgs& args) {
    ResolvedScenario r = resolve(args);
    if (!r.spec.sim) {
        throw std::invalid_argument("scenario '" + r.spec.name +
                                    "' has no sim section");
    }
    Trajectory trajs[2];
    const Variant variants[2] = {Variant::correct(),
                                 Variant::erroneous(r.spec.torque_scale)};
    for (int i = 0; i < 2; ++i) {
        SimConfig cfg = r.spec.sim->cfg;
        cfg.variant = variants[i];
        trajs[i] = simulate(r.spec.sim->initial_state, r.spec.sim->schedule,
                            r.params, cfg);
        const std::filesystem::path path =
            r.out / (r.spec.name + "_" + variant_name(variants[i]) + ".csv");
        write_file_atomic(path, trajectory_to_csv(trajs[i]));
        std::cout << path.string() << '\n';
    }
    const DivergenceReport report =
        diff_trajectories(trajs[0], trajs[1], 1e-3, r.spec.name);
    const std::filesystem::path report_path =
        r.out / (r.spec.name + "_report.json");
    write_json_atomic(report_path, report_to_json(report));
    std::cout << report_path.string() << '\n';
    return 0;
}

nlohmann::json tracking_to_json(const TrackingError& e) {
    return {{"rms", e.rms}, {"max", e.max}};
}

int cmd_mpc(const CommonArgs& args) {
    ResolvedScenario r = resolve(args);
    if (!r.spec.mpc) {
        throw std::invalid_argument("scenario '" + r.spec.name +
                                    "' has no mpc section");
    }
    const MpcScenario& m = *r.spec.mpc;
    const ClosedLoopResult result = closed_loop(
        make_variant(m.plant, r.spec.torque_scale),
        make_variant(m.controller, r.spec.torque_scale), m.reference,
        m.initial_state, r.params, m.cfg, m.t_final);

    const std::filesystem::path csv_path = r.out / (r.spec.name + "_mpc.csv");
    write_file_atomic(csv_path, trajectory_to_csv(result.trajectory));
    std::cout << csv_path.string() << '\n';

    nlohmann::json metrics;
    metrics["v"] = tracking_to_json(result.v);
    metrics["vn"] = tracking_to_json(result.vn);
    metrics["omega"] = tracking_to_json(result.omega);
    metrics["solver"] = {
        {"steps", result.solver.steps},
        {"max_iterations_per_step", result.solver.max_iterations_per_step},
        {"mean_iterations_per_step", result.solver.mean_iterations_per_step},
        {"worst_residual", result.solver.worst_residual},
        {"all_converged", result.solver.all_converged},
    };
    const std::filesystem::path metrics_path =
        r.out / (r.spec.name + "_metrics.json");
    write_json_atomic(metrics_path, metrics);
    std::cout << metrics_path.string() << '\n';

    if (!result.solver.all_converged) {
        std::cerr << "error: QP solver failed to converge on "
                  << "at least one control step (worst residual "
                  << format_g17(result.solver.worst_residual) << ")\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Dynamics and control toolkit for a three-wheel omnidirectional "
        "robot.\nModels the voltage-to-wrench drive chain in two variants: "
        "the corrected\ndynamics and a legacy variant that drops the "
        "omega coupling in the\nlateral force."};
    app.require_subcommand(1);
    app.fallthrough();

    long long seed = 0;
    app.add_option("--seed", seed,
                   "reserved for randomized scenario generation; the "
                   "physics itself is deterministic")
        ->group("");

    std::string params_path;
    std::string matrices_variant = "both";
    double matrices_scale = 1.0;
    std::optional<double> matrices_dt;
    CLI::App* matrices =
        app.add_subcommand("matrices",
                           "print the state-space A and B (and, with --dt, "
                           "their zero-order-hold discretization) as JSON");
    matrices->add_option("--params", params_path, "robot parameter JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    matrices->add_option("--variant", matrices_variant,
                         "correct|erroneous|both")
        ->check(CLI::IsMember({"correct", "erroneous", "both"}));
    matrices->add_option("--torque-scale", matrices_scale,
                         "yaw damping scale of the erroneous variant");
    matrices->add_option("--dt", matrices_dt, "sampling period for Ad, Bd")
        ->check(CLI::PositiveNumber);

    CommonArgs sim_args, cmp_args, mpc_args;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "integrate a voltage-schedule scenario to CSV");
    add_scenario_options(simulate, sim_args);
    CLI::App* compare = app.add_subcommand(
        "compare",
        "run both model variants on one scenario and report the divergence");
    add_scenario_options(compare, cmp_args);
    CLI::App* mpc = app.add_subcommand(
        "mpc", "closed-loop MPC run; plant and controller model variants "
               "are set in the scenario");
    add_scenario_options(mpc, mpc_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (matrices->parsed()) {
            return cmd_matrices(params_path, matrices_variant, matrices_scale,
                                matrices_dt);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim_args);
        }
        if (compare->parsed()) {
            return cmd_compare(cmp_args);
        }
        return cmd_mpc(mpc_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
