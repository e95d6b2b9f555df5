#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "ldr/geom.hpp"

namespace ldr {

// Axis-aligned voxelization domain. Dims are derived by rounding the
// extent to whole voxels and must each be divisible by 8 (the encoder
// reduces every spatial axis by 8x).
struct GridSpec {
  std::array<double, 3> range_min{};
  std::array<double, 3> range_max{};
  std::array<double, 3> voxel_size{};
  std::array<int, 3> dims{};

  GridSpec() = default;
  GridSpec(std::array<double, 3> lo, std::array<double, 3> hi,
           std::array<double, 3> size)
      : range_min(lo), range_max(hi), voxel_size(size) {
    for (int a = 0; a < 3; ++a) {
      if (!(hi[a] > lo[a])) {
        throw InvalidInputError("GridSpec: range_max must exceed range_min");
      }
      if (!(size[a] > 0.0)) {
        throw InvalidInputError("GridSpec: voxel size must be positive");
      }
      dims[a] = static_cast<int>(std::llround((hi[a] - lo[a]) / size[a]));
      if (dims[a] < 1) {
        throw InvalidInputError("GridSpec: derived dims must be positive");
      }
      if (dims[a] % 8 != 0) {
        throw InvalidInputError("GridSpec: dims must be divisible by 8");
      }
    }
  }

  // 128 x 128 x 16 grid; dense enough for gradient checks, small enough
  // to train on one core.
  static GridSpec desk_default() {
    return GridSpec({-12.8, -12.8, -2.0}, {12.8, 12.8, 2.8}, {0.2, 0.2, 0.3});
  }

  // The full-scale configuration (1504 x 1504 x 40).
  static GridSpec full_scale() {
    return GridSpec({-75.2, -75.2, -2.0}, {75.2, 75.2, 4.0}, {0.1, 0.1, 0.15});
  }

  std::size_t cell_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }

  bool operator==(const GridSpec& o) const {
    return range_min == o.range_min && range_max == o.range_max &&
           voxel_size == o.voxel_size;
  }
};

// Dense grid of reals in [0, 1], x-fastest storage.
struct OccupancyGrid {
  GridSpec spec;
  std::vector<double> values;

  OccupancyGrid() = default;
  explicit OccupancyGrid(const GridSpec& s)
      : spec(s), values(s.cell_count(), 0.0) {}

  std::size_t index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(spec.dims[0]) *
               (static_cast<std::size_t>(y) +
                static_cast<std::size_t>(spec.dims[1]) *
                    static_cast<std::size_t>(z));
  }
  double& at(int x, int y, int z) { return values[index(x, y, z)]; }
  double at(int x, int y, int z) const { return values[index(x, y, z)]; }
};

// Binary occupancy: a voxel is 1 when at least one in-range point falls
// inside it. Points outside the range are ignored; coordinates exactly
// on the top face clamp into the last voxel.
inline OccupancyGrid voxelize(const PointCloud& cloud, const GridSpec& spec) {
  OccupancyGrid grid(spec);
  for (const Point& p : cloud.points) {
    const double c[3] = {p.x, p.y, p.z};
    int idx[3];
    bool inside = true;
    for (int a = 0; a < 3; ++a) {
      if (c[a] < spec.range_min[a] || c[a] > spec.range_max[a]) {
        inside = false;
        break;
      }
      const int i = static_cast<int>(
          std::floor((c[a] - spec.range_min[a]) / spec.voxel_size[a]));
      idx[a] = std::min(i, spec.dims[a] - 1);
    }
    if (inside) grid.at(idx[0], idx[1], idx[2]) = 1.0;
  }
  return grid;
}

// Mean over all voxels of the squared difference.
inline double grid_mse(const OccupancyGrid& a, const OccupancyGrid& b) {
  if (!(a.spec == b.spec) || a.values.size() != b.values.size()) {
    throw ShapeError("grid_mse: grids have different specs");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.values.size());
}

// Grid payload as stored on disk: a 3 x u32 little-endian dim header
// followed by the values as 32-bit little-endian reals in x-fastest
// order.
struct GridData {
  std::array<std::uint32_t, 3> dims{};
  std::vector<float> values;
};

inline void write_grid(const std::array<std::uint32_t, 3>& dims,
                       const std::vector<double>& values,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("write_grid: cannot open " + path);
  out.write(reinterpret_cast<const char*>(dims.data()), 3 * sizeof(std::uint32_t));
  for (double v : values) {
    const float f = static_cast<float>(v);
    out.write(reinterpret_cast<const char*>(&f), sizeof(float));
  }
  if (!out) throw FormatError("write_grid: short write to " + path);
}

inline void write_grid(const OccupancyGrid& grid, const std::string& path) {
  write_grid({static_cast<std::uint32_t>(grid.spec.dims[0]),
              static_cast<std::uint32_t>(grid.spec.dims[1]),
              static_cast<std::uint32_t>(grid.spec.dims[2])},
             grid.values, path);
}

inline GridData read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("read_grid: cannot open " + path);
  GridData data;
  in.read(reinterpret_cast<char*>(data.dims.data()), 3 * sizeof(std::uint32_t));
  if (!in) throw FormatError("read_grid: truncated header in " + path);
  const std::size_t n = static_cast<std::size_t>(data.dims[0]) * data.dims[1] *
                        data.dims[2];
  data.values.resize(n);
  in.read(reinterpret_cast<char*>(data.values.data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  if (!in) throw FormatError("read_grid: truncated payload in " + path);
  return data;
}

}  // namespace ldr
