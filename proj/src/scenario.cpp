#include "omnibot/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>

namespace omnibot {

namespace {

void check_keys(const nlohmann::json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (item.key() == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument("unknown key '" + item.key() +
                                        "' in " + where);
        }
    }
}

double number_or(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number()) {
        throw std::invalid_argument(std::string("'") + key +
                                    "' must be a number");
    }
    return j.at(key).get<double>();
}

Variant::Kind kind_from_string(const std::string& s, const std::string& where) {
    if (s == "correct") {
        return Variant::Kind::Correct;
    }
    if (s == "erroneous") {
        return Variant::Kind::Erroneous;
    }
    throw std::invalid_argument(where +
                                " must be 'correct' or 'erroneous', got '" +
                                s + "'");
}

BodyState initial_state_from_json(const nlohmann::json& scenario) {
    BodyState state{};
    if (!scenario.contains("initial_state")) {
        return state;
    }
    const nlohmann::json& j = scenario.at("initial_state");
    check_keys(j, "initial_state", {"v", "vn", "omega", "x", "y", "theta"});
    state.vel.v = number_or(j, "v", 0.0);
    state.vel.vn = number_or(j, "vn", 0.0);
    state.vel.omega = number_or(j, "omega", 0.0);
    state.pose.x = number_or(j, "x", 0.0);
    state.pose.y = number_or(j, "y", 0.0);
    state.pose.theta = number_or(j, "theta", 0.0);
    return state;
}

SimScenario sim_scenario_from_json(const nlohmann::json& scenario,
                                   const BodyState& initial_state) {
    const nlohmann::json& sim = scenario.at("sim");
    check_keys(sim, "sim", {"dt", "t_final", "integrator", "record_stride"});

    SimScenario out;
    out.cfg.dt = number_or(sim, "dt", 1e-3);
    out.cfg.t_final = number_or(sim, "t_final", 10.0);
    out.cfg.record_stride =
        static_cast<int>(number_or(sim, "record_stride", 10.0));
    if (sim.contains("integrator")) {
        const std::string name = sim.at("integrator").get<std::string>();
        if (name == "rk4") {
            out.cfg.integrator = Integrator::Rk4;
        } else if (name == "euler") {
            out.cfg.integrator = Integrator::Euler;
        } else {
            throw std::invalid_argument(
                "integrator must be 'rk4' or 'euler', got '" + name + "'");
        }
    }
    validate(out.cfg);

    if (!scenario.contains("schedule")) {
        throw std::invalid_argument(
            "scenario has a 'sim' section but no 'schedule'");
    }
    std::vector<ScheduleSegment> segments;
    for (const nlohmann::json& seg : scenario.at("schedule")) {
        check_keys(seg, "schedule segment", {"t_start", "u"});
        if (!seg.contains("t_start") || !seg.contains("u")) {
            throw std::invalid_argument(
                "schedule segment needs 't_start' and 'u'");
        }
        const nlohmann::json& u = seg.at("u");
        if (!u.is_array() || u.size() != 3) {
            throw std::invalid_argument(
                "schedule segment 'u' must be an array of 3 voltages");
        }
        segments.push_back({seg.at("t_start").get<double>(),
                            MotorInput{u[0].get<double>(), u[1].get<double>(),
                                       u[2].get<double>()}});
    }
    out.schedule = InputSchedule(std::move(segments), out.cfg.t_final);
    out.initial_state = initial_state;
    return out;
}

MpcScenario mpc_scenario_from_json(const nlohmann::json& scenario,
                                   const BodyState& initial_state) {
    const nlohmann::json& j = scenario.at("mpc");
    check_keys(j, "mpc",
               {"horizon", "dt", "t_final", "state_weights", "input_weights",
                "u_max", "tolerance", "max_iterations", "plant_variant",
                "controller_variant", "reference"});

    MpcScenario out;
    out.cfg.horizon = static_cast<int>(number_or(j, "horizon", 20.0));
    out.cfg.dt = number_or(j, "dt", 0.02);
    out.t_final = number_or(j, "t_final", 10.0);
    for (const char* key : {"state_weights", "input_weights"}) {
        if (j.contains(key)) {
            const nlohmann::json& w = j.at(key);
            if (!w.is_array() || w.size() != 3) {
                throw std::invalid_argument(std::string("'") + key +
                                            "' must be an array of 3 weights");
            }
            Eigen::Vector3d v(w[0].get<double>(), w[1].get<double>(),
                              w[2].get<double>());
            if (key[0] == 's') {
                out.cfg.state_weights = v;
            } else {
                out.cfg.input_weights = v;
            }
        }
    }
    out.cfg.u_max = number_or(j, "u_max", out.cfg.u_max);
    out.cfg.tolerance = number_or(j, "tolerance", out.cfg.tolerance);
    out.cfg.max_iterations =
        static_cast<int>(number_or(j, "max_iterations",
                                   static_cast<double>(out.cfg.max_iterations)));
    validate(out.cfg);
    if (!(out.t_final >= out.cfg.dt)) {
        throw std::invalid_argument("mpc t_final must be >= dt");
    }

    if (j.contains("plant_variant")) {
        out.plant = kind_from_string(j.at("plant_variant").get<std::string>(),
                                     "plant_variant");
    }
    if (j.contains("controller_variant")) {
        out.controller = kind_from_string(
            j.at("controller_variant").get<std::string>(),
            "controller_variant");
    }

    if (!j.contains("reference")) {
        throw std::invalid_argument("mpc section needs a 'reference'");
    }
    std::vector<ReferenceSegment> segments;
    for (const nlohmann::json& seg : j.at("reference")) {
        check_keys(seg, "reference segment",
                   {"t_start", "v", "vn", "omega"});
        if (!seg.contains("t_start")) {
            throw std::invalid_argument("reference segment needs 't_start'");
        }
        segments.push_back({seg.at("t_start").get<double>(),
                            BodyVelocity{number_or(seg, "v", 0.0),
                                         number_or(seg, "vn", 0.0),
                                         number_or(seg, "omega", 0.0)}});
    }
    out.reference = ReferenceSchedule(std::move(segments), out.t_final);
    out.initial_state = initial_state;
    return out;
}

}  // namespace

VariantSelect variant_select_from_string(const std::string& s) {
    if (s == "correct") {
        return VariantSelect::Correct;
    }
    if (s == "erroneous") {
        return VariantSelect::Erroneous;
    }
    if (s == "both") {
        return VariantSelect::Both;
    }
    throw std::invalid_argument(
        "variant must be 'correct', 'erroneous' or 'both', got '" + s + "'");
}

const char* to_string(VariantSelect v) {
    switch (v) {
        case VariantSelect::Correct:
            return "correct";
        case VariantSelect::Erroneous:
            return "erroneous";
        default:
            return "both";
    }
}

ScenarioSpec scenario_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        throw std::invalid_argument("scenario file must be a JSON object");
    }
    check_keys(j, "scenario",
               {"name", "params", "variant", "torque_scale", "out_dir",
                "initial_state", "sim", "schedule", "mpc"});

    ScenarioSpec spec;
    if (!j.contains("name") || !j.at("name").is_string() ||
        j.at("name").get<std::string>().empty()) {
        throw std::invalid_argument("scenario needs a non-empty 'name'");
    }
    spec.name = j.at("name").get<std::string>();
    if (spec.name.find('/') != std::string::npos ||
        spec.name.find('\\') != std::string::npos) {
        throw std::invalid_argument(
            "scenario name must not contain path separators");
    }

    if (!j.contains("params") || !j.at("params").is_string()) {
        throw std::invalid_argument(
            "scenario needs a 'params' file path");
    }
    std::filesystem::path params(j.at("params").get<std::string>());
    spec.params_path = params.is_absolute() ? params : base_dir / params;

    if (j.contains("variant")) {
        spec.variant =
            variant_select_from_string(j.at("variant").get<std::string>());
    }
    spec.torque_scale = number_or(j, "torque_scale", 1.0);
    if (j.contains("out_dir")) {
        std::filesystem::path out(j.at("out_dir").get<std::string>());
        spec.out_dir = out.is_absolute() ? out : base_dir / out;
    }

    const BodyState initial_state = initial_state_from_json(j);
    if (j.contains("sim") || j.contains("schedule")) {
        spec.sim = sim_scenario_from_json(j, initial_state);
    }
    if (j.contains("mpc")) {
        spec.mpc = mpc_scenario_from_json(j, initial_state);
    }
    if (!spec.sim && !spec.mpc) {
        throw std::invalid_argument(
            "scenario needs a 'sim'/'schedule' or an 'mpc' section");
    }
    return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open scenario file: " +
                                    path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("scenario file " + path.string() + ": " +
                                    e.what());
    }
    return scenario_from_json(j, path.parent_path());
}

}  // namespace omnibot
