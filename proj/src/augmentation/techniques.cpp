#include "augview/augmentation/techniques.hpp"

#include <cmath>

#include "augview/common/error.hpp"

namespace augview::augmentation {

double hinge_angle(double d, double d_near, double d_far) {
  if (!(d_near < d_far)) throw Error(ErrorCode::kBadParams, "hinge ramp needs d_near < d_far");
  return 90.0 * std::clamp((d - d_near) / (d_far - d_near), 0.0, 1.0);
}

double hinge_angle(double d, const AugmentationParams& p) { return hinge_angle(d, p.d_near, p.d_far); }

Vec3 BezierCurve::at(double t) const {
  const double s = 1.0 - t;
  return control[0] * (s * s * s) + control[1] * (3.0 * s * s * t) + control[2] * (3.0 * s * t * t) +
         control[3] * (t * t * t);
}

BezierCurve bezier_link(Vec3 p0, Vec3 p1, const AugmentationParams& p) {
  if (p0 == p1) throw Error(ErrorCode::kDegenerateLink, "link endpoints coincide");
  const Vec3 chord = p1 - p0;
  const double h = std::clamp(p.link_lift * chord.norm(), p.link_min_height, p.link_max_height);
  Vec3 c1 = p0 + chord * (1.0 / 3.0);
  Vec3 c2 = p0 + chord * (2.0 / 3.0);
  c1.z += h;
  c2.z += h;
  return {{p0, c1, c2, p1}};
}

Vec3 CurvedScreen::map(Vec3 p) const {
  if (p.x > window_hi && kappa_right > 0.0) {
    const double r = 1.0 / kappa_right;
    const double theta = (p.x - window_hi) * kappa_right;
    const Vec3 base{window_hi + r * std::sin(theta), p.y, r * (1.0 - std::cos(theta))};
    return base + Vec3{-std::sin(theta), 0.0, std::cos(theta)} * p.z;
  }
  if (p.x < window_lo && kappa_left > 0.0) {
    const double r = 1.0 / kappa_left;
    const double theta = (window_lo - p.x) * kappa_left;
    const Vec3 base{window_lo - r * std::sin(theta), p.y, r * (1.0 - std::cos(theta))};
    return base + Vec3{std::sin(theta), 0.0, std::cos(theta)} * p.z;
  }
  return p;
}

Vec3 CurvedScreen::rotate(Vec3 dir, double x) const {
  double theta = 0.0;
  if (x > window_hi) theta = (x - window_hi) * kappa_right;
  else if (x < window_lo) theta = -(window_lo - x) * kappa_left;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {dir.x * c - dir.z * s, dir.y, dir.x * s + dir.z * c};
}

CurvedScreen curved_screen_for(const spatial::Pose& viewer, const spatial::DisplayConfig& cfg,
                               const AugmentationParams& p) {
  const double xv = viewer.position.x;
  const double w0 = p.flat_half_width;
  const double fade = std::max(0.0, 1.0 - viewer.position.z / p.d_overview);
  const auto kappa = [&](double d_edge) {
    return p.curvature_max * std::clamp((d_edge - w0) / cfg.width_m, 0.0, 1.0) * fade;
  };
  return {xv - w0, xv + w0, kappa(xv), kappa(cfg.width_m - xv)};
}

std::vector<EmbedSegment> embed_segments(const data::CategoryCounts& counts, double total_depth) {
  std::uint64_t total = 0;
  for (const auto& [cat, n] : counts) total += n;
  std::vector<EmbedSegment> out;
  if (total == 0) return out;
  double z = 0.0;
  for (const auto& [cat, n] : counts) {
    const double depth = total_depth * static_cast<double>(n) / static_cast<double>(total);
    out.push_back({cat, n, z, depth});
    z += depth;
  }
  return out;
}

}  // namespace augview::augmentation
