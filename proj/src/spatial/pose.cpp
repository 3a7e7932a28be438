#include "augview/spatial/pose.hpp"

#include <cmath>

namespace augview::spatial {

Vec3 normalized_facing(Vec3 f) {
  const double n = f.norm();
  if (!std::isfinite(n) || n == 0.0) return {0.0, 0.0, -1.0};
  return f * (1.0 / n);
}

std::string_view to_string(Side side) { return side == Side::kLeft ? "left" : "right"; }

ProxemicReport proxemic_side(const Pose& pose, const DisplayConfig& cfg) {
  const Vec3 p = pose.position;
  ProxemicReport r;
  r.to_left = std::abs(p.x);
  r.to_right = std::abs(cfg.width_m - p.x);
  r.to_bottom = std::abs(p.y);
  r.to_top = std::abs(cfg.height_m - p.y);
  r.to_plane = std::abs(p.z);
  r.preferred = r.to_left < r.to_right ? Side::kLeft : Side::kRight;
  return r;
}

json to_json(const Pose& pose) {
  return json{{"position", {pose.position.x, pose.position.y, pose.position.z}},
              {"facing", {pose.facing.x, pose.facing.y, pose.facing.z}}};
}

Pose pose_from_json(const json& j) {
  Pose p;
  if (j.contains("position")) {
    const auto& v = j.at("position");
    p.position = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
  }
  if (j.contains("facing")) {
    const auto& v = j.at("facing");
    p.facing = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
  }
  return p;
}

}  // namespace augview::spatial
