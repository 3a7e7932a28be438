#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

namespace augview {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;

  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend Vec3 operator*(double s, Vec3 a) { return a * s; }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(Vec3 o) const { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
  double norm() const { return std::sqrt(dot(*this)); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double distance(Vec3 a, Vec3 b) { return (a - b).norm(); }

// Axis-aligned rectangle with its origin at the lower-left corner (y grows upward).
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double top() const { return y + h; }
  Vec2 center() const { return {x + w / 2.0, y + h / 2.0}; }
  bool contains(Vec2 p) const { return p.x >= x && p.x <= right() && p.y >= y && p.y <= top(); }
  // Positive-area intersection; rectangles that only touch do not overlap.
  bool overlaps(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.top() && o.y < top();
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Aabb {
  Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
  Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity()};

  bool empty() const { return lo.x > hi.x; }
  void expand(Vec3 p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  void expand(const Aabb& o) {
    if (!o.empty()) {
      expand(o.lo);
      expand(o.hi);
    }
  }
  static Aabb of(std::initializer_list<Vec3> points) {
    Aabb box;
    for (const auto& p : points) box.expand(p);
    return box;
  }
};

}  // namespace augview
