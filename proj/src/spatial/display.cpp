#include "augview/spatial/display.hpp"

#include <cmath>

#include "augview/common/error.hpp"

namespace augview::spatial {

DisplayConfig surface_hub_84() { return {"surface-hub-84", 3840, 2160, 1.872, 1.053}; }

DisplayConfig display_wall() { return {"display-wall", 7680, 3240, 4.86, 2.06}; }

std::optional<DisplayConfig> display_preset(std::string_view name) {
  if (name == "surface-hub-84") return surface_hub_84();
  if (name == "display-wall") return display_wall();
  return std::nullopt;
}

void validate(const DisplayConfig& cfg) {
  if (cfg.width_px <= 0 || cfg.height_px <= 0) {
    throw Error(ErrorCode::kConfigError, "display.width_px/height_px must be positive");
  }
  if (!(cfg.width_m > 0.0) || !(cfg.height_m > 0.0) || !std::isfinite(cfg.width_m) ||
      !std::isfinite(cfg.height_m)) {
    throw Error(ErrorCode::kConfigError, "display.width_m/height_m must be positive");
  }
}

Vec3 display_to_world(Vec2 p, const DisplayConfig& cfg) {
  return {p.x * cfg.width_m / cfg.width_px, p.y * cfg.height_m / cfg.height_px, 0.0};
}

Vec2 world_to_display(Vec3 w, const DisplayConfig& cfg) {
  return {w.x * cfg.width_px / cfg.width_m, w.y * cfg.height_px / cfg.height_m};
}

Rect display_rect_to_world(const Rect& r, const DisplayConfig& cfg) {
  const Vec3 lo = display_to_world({r.x, r.y}, cfg);
  const Vec3 hi = display_to_world({r.right(), r.top()}, cfg);
  return {lo.x, lo.y, hi.x - lo.x, hi.y - lo.y};
}

json to_json(const DisplayConfig& cfg) {
  return json{{"name", cfg.name},         {"width_px", cfg.width_px}, {"height_px", cfg.height_px},
              {"width_m", cfg.width_m}, {"height_m", cfg.height_m}};
}

DisplayConfig display_from_json(const json& j) {
  DisplayConfig cfg;
  if (j.contains("preset")) {
    const auto name = j.at("preset").get<std::string>();
    auto preset = display_preset(name);
    if (!preset) throw Error(ErrorCode::kConfigError, "display.preset: unknown preset '" + name + "'");
    cfg = *preset;
  }
  cfg.name = j.value("name", cfg.name);
  cfg.width_px = j.value("width_px", cfg.width_px);
  cfg.height_px = j.value("height_px", cfg.height_px);
  cfg.width_m = j.value("width_m", cfg.width_m);
  cfg.height_m = j.value("height_m", cfg.height_m);
  validate(cfg);
  return cfg;
}

}  // namespace augview::spatial
