#pragma once

#include <cstddef>
#include <string>

#include "augview/common/canonical_json.hpp"

namespace augview::augmentation {

// Tunable engine parameters. Every field can be overridden from the layout's
// "augmentation" object; JSON keys equal the field names.
struct AugmentationParams {
  // Hinged visualizations: tilt ramps linearly from d_near (0 deg) to d_far (90 deg);
  // all hinged panels disappear beyond d_overview from the screen plane.
  double d_near = 1.2;
  double d_far = 3.5;
  double d_overview = 4.5;
  // Curved screen: half-width of the flat window in front of the analyst and
  // the maximum curvature (1/m).
  double flat_half_width = 0.75;
  double curvature_max = 1.2;
  // Embedded visualizations: total extrusion depth.
  double embed_depth = 0.25;
  // Visualization layers: spacing between panels and opacity of inactive panels.
  double layer_spacing = 0.15;
  double layer_inactive_opacity = 0.35;
  // Links: apex height = clamp(link_lift * length, link_min_height, link_max_height).
  double link_lift = 0.15;
  double link_min_height = 0.05;
  double link_max_height = 0.6;
  std::size_t max_links = 200;
  // Lenses.
  double lens_radius_px = 180.0;
  double lens_step = 0.05;
  // Extended axis views: strips fold when another chart is this close (px).
  double adjacency_px = 40.0;
  std::size_t axis_bins = 10;
  double axis_strip_m = 0.15;
  // Annotations float just in front of the glass.
  double annotation_offset = 0.005;
};

// Throws Error(kBadParams) on inconsistent values (e.g. d_near >= d_far).
void validate(const AugmentationParams& p);

json to_json(const AugmentationParams& p);
// Starts from `base` and overrides the keys present in `j`. Unknown keys are rejected.
AugmentationParams params_from_json(const json& j, AugmentationParams base = {});

// One line per parameter: "name = default", for --help output.
std::string describe_defaults();

}  // namespace augview::augmentation
