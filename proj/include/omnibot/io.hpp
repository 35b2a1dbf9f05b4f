#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "omnibot/sim.hpp"

namespace omnibot {

/// Shortest-of-17-significant-digits formatting ("%.17g"), enough to
/// round-trip any double exactly.
std::string format_g17(double value);

/// CSV with header t,x,y,theta,v,vn,omega,u1,u2,u3,Fv,Fvn,Gamma and LF line
/// endings, one row per recorded sample.
std::string trajectory_to_csv(const Trajectory& traj);

/// Writes to a temporary file in the target directory, then renames.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

void write_json_atomic(const std::filesystem::path& path,
                       const nlohmann::json& j);

}  // namespace omnibot
