#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "ldr/error.hpp"

namespace ldr {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double intensity = 0.0;  // reflectance in [0, 1]; 0 when the source had none
};

// Spherical form of a point: range in meters, azimuth in (-pi, pi],
// polar angle measured from +z in [0, pi].
struct SphPoint {
  double range = 0.0;
  double azimuth = 0.0;
  double polar = 0.0;
};

// The universal payload. bin_labels, when present, has one entry per
// point and indexes the bins of the BeamModel the cloud was labeled
// against.
struct PointCloud {
  std::vector<Point> points;
  std::optional<std::vector<std::uint32_t>> bin_labels;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool labeled() const { return bin_labels.has_value(); }
};

inline bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (a <= 0.0) a += 2.0 * std::numbers::pi;
  return a - std::numbers::pi;
}

// Absolute shortest-arc distance between two azimuths.
inline double angular_gap(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

// Cartesian -> spherical. The origin maps to (0, 0, 0); azimuth uses the
// two-argument arctangent (branch (-pi, pi], total at x <= 0).
inline SphPoint cart_to_sph(const Point& p) {
  if (!is_finite(p)) {
    throw InvalidInputError("cart_to_sph: non-finite coordinates");
  }
  const double range = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  if (range == 0.0) return {0.0, 0.0, 0.0};
  double azimuth = std::atan2(p.y, p.x);
  if (azimuth == -std::numbers::pi) azimuth = std::numbers::pi;
  const double polar = std::acos(std::clamp(p.z / range, -1.0, 1.0));
  return {range, azimuth, polar};
}

inline Point sph_to_cart(const SphPoint& s, double intensity = 0.0) {
  const double sin_polar = std::sin(s.polar);
  return {s.range * sin_polar * std::cos(s.azimuth),
          s.range * sin_polar * std::sin(s.azimuth),
          s.range * std::cos(s.polar), intensity};
}

}  // namespace ldr
