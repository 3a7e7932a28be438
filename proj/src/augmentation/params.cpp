#include "augview/augmentation/params.hpp"

#include <cmath>
#include <sstream>

#include "augview/common/error.hpp"

namespace augview::augmentation {

namespace {

template <typename F>
void for_each_field(AugmentationParams& p, F&& f) {
  f("d_near", p.d_near);
  f("d_far", p.d_far);
  f("d_overview", p.d_overview);
  f("flat_half_width", p.flat_half_width);
  f("curvature_max", p.curvature_max);
  f("embed_depth", p.embed_depth);
  f("layer_spacing", p.layer_spacing);
  f("layer_inactive_opacity", p.layer_inactive_opacity);
  f("link_lift", p.link_lift);
  f("link_min_height", p.link_min_height);
  f("link_max_height", p.link_max_height);
  f("max_links", p.max_links);
  f("lens_radius_px", p.lens_radius_px);
  f("lens_step", p.lens_step);
  f("adjacency_px", p.adjacency_px);
  f("axis_bins", p.axis_bins);
  f("axis_strip_m", p.axis_strip_m);
  f("annotation_offset", p.annotation_offset);
}

}  // namespace

void validate(const AugmentationParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kBadParams, std::string("augmentation.") + what);
  };
  AugmentationParams copy = p;
  for_each_field(copy, [&](const char* name, auto& v) {
    require(std::isfinite(static_cast<double>(v)) && v >= 0, name);
  });
  require(p.d_near < p.d_far, "d_near must be below d_far");
  require(p.d_overview > 0.0, "d_overview must be positive");
  require(p.link_min_height <= p.link_max_height, "link_min_height must not exceed link_max_height");
  require(p.axis_bins > 0, "axis_bins must be positive");
  require(p.layer_inactive_opacity <= 1.0, "layer_inactive_opacity must be within [0, 1]");
}

json to_json(const AugmentationParams& p) {
  json j = json::object();
  AugmentationParams copy = p;
  for_each_field(copy, [&](const char* name, auto& v) { j[name] = v; });
  return j;
}

AugmentationParams params_from_json(const json& j, AugmentationParams base) {
  if (j.is_null()) return base;
  if (!j.is_object()) throw Error(ErrorCode::kBadParams, "augmentation must be an object");
  std::size_t used = 0;
  for_each_field(base, [&](const char* name, auto& v) {
    if (!j.contains(name)) return;
    ++used;
    const auto& value = j.at(name);
    if (!value.is_number()) throw Error(ErrorCode::kBadParams, std::string("augmentation.") + name + " must be a number");
    v = value.get<std::remove_reference_t<decltype(v)>>();
  });
  if (used != j.size()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool known = false;
      for_each_field(base, [&](const char* name, auto&) { known = known || it.key() == name; });
      if (!known) throw Error(ErrorCode::kBadParams, "augmentation." + it.key() + " is not a parameter");
    }
  }
  validate(base);
  return base;
}

std::string describe_defaults() {
  std::ostringstream out;
  AugmentationParams p;
  for_each_field(p, [&](const char* name, auto& v) { out << "  " << name << " = " << v << '\n'; });
  return out.str();
}

}  // namespace augview::augmentation
