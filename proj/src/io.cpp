#include "omnibot/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace omnibot {

std::string format_g17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = "t,x,y,theta,v,vn,omega,u1,u2,u3,Fv,Fvn,Gamma\n";
    for (const TrajectorySample& s : traj.samples) {
        out += format_g17(s.t);
        for (double value :
             {s.pose.x, s.pose.y, s.pose.theta, s.vel.v, s.vel.vn,
              s.vel.omega, s.input.u1, s.input.u2, s.input.u3, s.wrench.f_v,
              s.wrench.f_vn, s.wrench.gamma}) {
            out += ',';
            out += format_g17(value);
        }
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write file: " + tmp.string());
        }
        out << content;
        if (!out) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path,
                       const nlohmann::json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace omnibot
