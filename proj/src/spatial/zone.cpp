#include "augview/spatial/zone.hpp"

#include <array>

#include "augview/common/error.hpp"

namespace augview::spatial {

namespace {

constexpr std::array<const char*, 3> kHorizontal{"left", "center", "right"};
constexpr std::array<const char*, 3> kVertical{"bottom", "middle", "top"};
constexpr std::array<const char*, 3> kDepth{"behind", "coincident", "front"};

// Which of the three cells along one axis the closed interval [lo, hi] touches.
std::array<bool, 3> span_cells(double lo, double hi, double low_edge, double high_edge) {
  return {lo < low_edge, lo <= high_edge && hi >= low_edge, hi > high_edge};
}

}  // namespace

Zone classify_zone(Vec3 p, const DisplayConfig& cfg) {
  Zone z;
  z.horizontal = p.x < 0.0 ? Horizontal::kLeft : (p.x <= cfg.width_m ? Horizontal::kCenter : Horizontal::kRight);
  z.vertical = p.y < 0.0 ? Vertical::kBottom : (p.y <= cfg.height_m ? Vertical::kMiddle : Vertical::kTop);
  if (p.z > kCoincidenceTolerance) {
    z.depth = Depth::kFront;
  } else if (p.z < -kCoincidenceTolerance) {
    z.depth = Depth::kBehind;
  } else {
    z.depth = Depth::kCoincident;
  }
  return z;
}

std::vector<Zone> zones_of_box(const Aabb& box, const DisplayConfig& cfg) {
  std::vector<Zone> out;
  if (box.empty()) return out;
  const auto hs = span_cells(box.lo.x, box.hi.x, 0.0, cfg.width_m);
  const auto vs = span_cells(box.lo.y, box.hi.y, 0.0, cfg.height_m);
  const auto ds = span_cells(box.lo.z, box.hi.z, -kCoincidenceTolerance, kCoincidenceTolerance);
  for (int h = 0; h < 3; ++h) {
    for (int v = 0; v < 3; ++v) {
      for (int d = 0; d < 3; ++d) {
        if (hs[h] && vs[v] && ds[d]) {
          out.push_back({static_cast<Horizontal>(h), static_cast<Vertical>(v), static_cast<Depth>(d)});
        }
      }
    }
  }
  return out;
}

std::string to_string(const Zone& z) {
  return std::string(kHorizontal[static_cast<int>(z.horizontal)]) + "/" +
         kVertical[static_cast<int>(z.vertical)] + "/" + kDepth[static_cast<int>(z.depth)];
}

Zone zone_from_string(const std::string& s) {
  for (int h = 0; h < 3; ++h) {
    for (int v = 0; v < 3; ++v) {
      for (int d = 0; d < 3; ++d) {
        const Zone z{static_cast<Horizontal>(h), static_cast<Vertical>(v), static_cast<Depth>(d)};
        if (to_string(z) == s) return z;
      }
    }
  }
  throw Error(ErrorCode::kBadParams, "unknown zone '" + s + "'");
}

}  // namespace augview::spatial
