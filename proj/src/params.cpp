#include "omnibot/params.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace omnibot {

namespace {

constexpr std::array<const char*, 11> kFieldNames = {
    "k_t", "l", "r", "r_a", "d", "delta", "mass", "inertia",
    "b_v", "b_vn", "b_omega"};

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be > 0");
    }
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be >= 0");
    }
}

}  // namespace

RobotParams validate(const RobotParams& params) {
    require_positive(params.k_t, "k_t");
    require_positive(params.l, "l");
    require_positive(params.r, "r");
    require_positive(params.r_a, "r_a");
    require_positive(params.d, "d");
    if (!(params.delta > 0.0 && params.delta < std::numbers::pi / 2.0)) {
        throw std::invalid_argument("delta must lie in (0, pi/2)");
    }
    require_positive(params.mass, "mass");
    require_positive(params.inertia, "inertia");
    require_nonnegative(params.b_v, "b_v");
    require_nonnegative(params.b_vn, "b_vn");
    require_nonnegative(params.b_omega, "b_omega");
    return params;
}

DriveConstants drive_constants(const RobotParams& params) {
    const double gain = params.k_t * params.l / (params.r * params.r_a);
    const double damping =
        params.k_t * params.k_t * params.l * params.l /
        (params.r * params.r * params.r_a);
    return {gain, damping};
}

RobotParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("parameter file must be a JSON object");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* name : kFieldNames) {
            if (item.key() == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument("unknown parameter field '" +
                                        item.key() + "'");
        }
        if (!item.value().is_number()) {
            throw std::invalid_argument("parameter field '" + item.key() +
                                        "' must be a number");
        }
    }
    for (const char* name : kFieldNames) {
        if (!j.contains(name)) {
            throw std::invalid_argument("missing parameter field '" +
                                        std::string(name) + "'");
        }
    }
    RobotParams p{};
    p.k_t = j.at("k_t").get<double>();
    p.l = j.at("l").get<double>();
    p.r = j.at("r").get<double>();
    p.r_a = j.at("r_a").get<double>();
    p.d = j.at("d").get<double>();
    p.delta = j.at("delta").get<double>();
    p.mass = j.at("mass").get<double>();
    p.inertia = j.at("inertia").get<double>();
    p.b_v = j.at("b_v").get<double>();
    p.b_vn = j.at("b_vn").get<double>();
    p.b_omega = j.at("b_omega").get<double>();
    return p;
}

RobotParams load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open parameter file: " +
                                    path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("parameter file " + path.string() +
                                    ": " + e.what());
    }
    return validate(params_from_json(j));
}

nlohmann::json params_to_json(const RobotParams& p) {
    return nlohmann::json{
        {"k_t", p.k_t},       {"l", p.l},
        {"r", p.r},           {"r_a", p.r_a},
        {"d", p.d},           {"delta", p.delta},
        {"mass", p.mass},     {"inertia", p.inertia},
        {"b_v", p.b_v},       {"b_vn", p.b_vn},
        {"b_omega", p.b_omega}};
}

}  // namespace omnibot
