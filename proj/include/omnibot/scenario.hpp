#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "omnibot/mpc.hpp"
#include "omnibot/sim.hpp"

namespace omnibot {

enum class VariantSelect { Correct, Erroneous, Both };

VariantSelect variant_select_from_string(const std::string& s);
const char* to_string(VariantSelect v);

/// Open-loop simulation part of a scenario (sections "sim" + "schedule").
struct SimScenario {
    SimConfig cfg;  // variant is filled in per run
    InputSchedule schedule;
    BodyState initial_state;
};

/// Closed-loop part of a scenario (section "mpc").
struct MpcScenario {
    MpcConfig cfg;
    double t_final = 10.0;
    Variant::Kind plant = Variant::Kind::Correct;
    Variant::Kind controller = Variant::Kind::Correct;
    ReferenceSchedule reference;
    BodyState initial_state;
};

struct ScenarioSpec {
    std::string name;
    std::filesystem::path params_path;  // resolved against the scenario dir
    VariantSelect variant = VariantSelect::Correct;
    double torque_scale = 1.0;
    /// Default output directory; empty means the caller decides.
    std::filesystem::path out_dir;
    std::optional<SimScenario> sim;
    std::optional<MpcScenario> mpc;
};

/// Parses and validates a scenario. Relative paths inside the file are
/// resolved against base_dir. Unknown keys anywhere are an error.
ScenarioSpec scenario_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir);

ScenarioSpec load_scenario(const std::filesystem::path& path);

}  // namespace omnibot
