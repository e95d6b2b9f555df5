#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ldr/geom.hpp"
#include "ldr/rng.hpp"

namespace ldr {

// Spinning-LiDAR description: beam_count uniformly spaced elevation
// angles across [fov_lo_deg, fov_hi_deg].
struct SensorProfile {
  std::string name = "custom";
  int beam_count = 64;
  double fov_lo_deg = -24.9;
  double fov_hi_deg = 2.0;
  double azimuth_step_deg = 0.2;
  double max_range = 120.0;
  double dropout = 0.0;  // per-ray hit drop probability
};

// 64-beam spinning unit, vertical view [-17.6, 2.4].
inline SensorProfile waymo64_profile() {
  return {"waymo64", 64, -17.6, 2.4, 0.2, 120.0, 0.0};
}
// 64-beam spinning unit, vertical view [-24.9, 2.0].
inline SensorProfile kitti64_profile() {
  return {"kitti64", 64, -24.9, 2.0, 0.2, 120.0, 0.0};
}
// 32-beam spinning unit, vertical view [-30.0, 10.0].
inline SensorProfile nuscenes32_profile() {
  return {"nuscenes32", 32, -30.0, 10.0, 0.2, 120.0, 0.0};
}

inline SensorProfile profile_by_name(const std::string& name) {
  if (name == "waymo64") return waymo64_profile();
  if (name == "kitti64") return kitti64_profile();
  if (name == "nuscenes32") return nuscenes32_profile();
  throw InvalidInputError("unknown sensor profile: " + name);
}

// Axis-aligned cuboid.
struct Box {
  std::array<double, 3> center{};
  std::array<double, 3> size{};
  std::string label = "box";

  bool contains(const Point& p, double eps = 1e-9) const {
    return std::abs(p.x - center[0]) <= size[0] / 2 + eps &&
           std::abs(p.y - center[1]) <= size[1] / 2 + eps &&
           std::abs(p.z - center[2]) <= size[2] / 2 + eps;
  }
};

// World-frame scene: a ground plane at z = ground_z, the sensor at
// (0, 0, sensor_z), and a list of boxes. Emitted clouds are in the
// sensor frame (sensor at the origin), so the ground shows up at
// z = ground_z - sensor_z.
struct Scene {
  double ground_z = 0.0;
  double sensor_z = 1.8;
  std::vector<Box> boxes;
};

struct ScanResult {
  PointCloud cloud;
  std::vector<Box> fg_boxes;  // sensor-frame copies of the scene boxes
};

namespace detail {

// Slab-test ray/AABB intersection; returns the entry distance or +inf.
inline double ray_box_distance(const std::array<double, 3>& origin,
                               const std::array<double, 3>& dir,
                               const Box& box) {
  double t_near = 0.0;
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    const double lo = box.center[a] - box.size[a] / 2;
    const double hi = box.center[a] + box.size[a] / 2;
    if (dir[a] == 0.0) {
      if (origin[a] < lo || origin[a] > hi) {
        return std::numeric_limits<double>::infinity();
      }
      continue;
    }
    double t0 = (lo - origin[a]) / dir[a];
    double t1 = (hi - origin[a]) / dir[a];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::numeric_limits<double>::infinity();
  }
  return t_near > 0.0 ? t_near : std::numeric_limits<double>::infinity();
}

}  // namespace detail

// Casts one ray per (beam, azimuth step) and records the nearest
// intersection with the ground plane or a box within max range. Beams
// iterate outer, azimuth inner, so a fixed (scene, profile, seed) yields
// a byte-identical cloud.
inline ScanResult scan(const Scene& scene, const SensorProfile& profile,
                       RngState& rng) {
  if (profile.beam_count < 1) {
    throw InvalidInputError("scan: beam count must be >= 1");
  }
  if (profile.azimuth_step_deg <= 0.0) {
    throw InvalidInputError("scan: azimuth step must be positive");
  }
  const double deg = std::numbers::pi / 180.0;
  const double step = profile.azimuth_step_deg * deg;
  const int n_azimuth = static_cast<int>(std::floor(2.0 * std::numbers::pi / step));
  const std::array<double, 3> origin = {0.0, 0.0, scene.sensor_z};

  ScanResult result;
  result.cloud.points.reserve(
      static_cast<std::size_t>(profile.beam_count) * n_azimuth);

  for (int b = 0; b < profile.beam_count; ++b) {
    const double elevation =
        profile.beam_count == 1
            ? 0.5 * (profile.fov_lo_deg + profile.fov_hi_deg) * deg
            : (profile.fov_lo_deg +
               (profile.fov_hi_deg - profile.fov_lo_deg) * b /
                   static_cast<double>(profile.beam_count - 1)) *
                  deg;
    const double cos_el = std::cos(elevation);
    const double sin_el = std::sin(elevation);
    for (int j = 0; j < n_azimuth; ++j) {
      const double az = -std::numbers::pi + (j + 0.5) * step;
      const std::array<double, 3> dir = {cos_el * std::cos(az),
                                         cos_el * std::sin(az), sin_el};
      double t_hit = std::numeric_limits<double>::infinity();
      if (dir[2] != 0.0) {
        const double t = (scene.ground_z - scene.sensor_z) / dir[2];
        if (t > 0.0) t_hit = t;
      }
      for (const Box& box : scene.boxes) {
        t_hit = std::min(t_hit, detail::ray_box_distance(origin, dir, box));
      }
      if (!(t_hit <= profile.max_range)) continue;
      if (profile.dropout > 0.0 && rng.next_unit() < profile.dropout) continue;
      result.cloud.points.push_back({t_hit * dir[0], t_hit * dir[1],
                                     t_hit * dir[2],
                                     1.0 - t_hit / profile.max_range});
    }
  }

  result.fg_boxes = scene.boxes;
  for (Box& box : result.fg_boxes) box.center[2] -= scene.sensor_z;
  return result;
}

// Ground plus four walls, so every beam of every Table-style profile
// hits something; interior boxes are added separately.
inline Scene default_scene() {
  Scene scene;
  scene.ground_z = 0.0;
  scene.sensor_z = 1.8;
  scene.boxes.push_back({{21.0, 0.0, 6.0}, {2.0, 46.0, 16.0}, "wall"});
  scene.boxes.push_back({{-21.0, 0.0, 6.0}, {2.0, 46.0, 16.0}, "wall"});
  scene.boxes.push_back({{0.0, 21.0, 6.0}, {46.0, 2.0, 16.0}, "wall"});
  scene.boxes.push_back({{0.0, -21.0, 6.0}, {46.0, 2.0, 16.0}, "wall"});
  return scene;
}

// Adds count car-sized boxes resting on the ground at ranges the desk
// grid can see.
inline void add_random_boxes(Scene& scene, int count, RngState& rng) {
  for (int i = 0; i < count; ++i) {
    const double r = 4.0 + 7.0 * rng.next_unit();
    const double az = -std::numbers::pi + 2.0 * std::numbers::pi * rng.next_unit();
    Box box;
    box.size = {3.5 + 1.5 * rng.next_unit(), 1.6 + 0.4 * rng.next_unit(),
                1.4 + 0.4 * rng.next_unit()};
    box.center = {r * std::cos(az), r * std::sin(az),
                  scene.ground_z + box.size[2] / 2};
    box.label = "car";
    scene.boxes.push_back(box);
  }
}

}  // namespace ldr
