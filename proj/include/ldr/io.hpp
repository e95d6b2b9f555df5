#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldr/geom.hpp"
#include "ldr/synth.hpp"

namespace ldr {

enum class CloudFormat { bin4, xyz_csv };

// .bin -> bin4, .csv -> xyz-csv.
inline CloudFormat infer_cloud_format(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".bin") return CloudFormat::bin4;
  if (ext == ".csv") return CloudFormat::xyz_csv;
  throw FormatError("cannot infer cloud format from extension of " + path);
}

namespace detail {

inline double parse_cell(const std::string& cell, const std::string& path,
                         std::size_t line_no) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t' ||
                          *(end - 1) == '\r'))
    --end;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw FormatError(path + ": non-numeric cell at line " +
                      std::to_string(line_no));
  }
  return value;
}

}  // namespace detail

// bin4: consecutive little-endian 32-bit reals, four per point
// (x, y, z, intensity). xyz-csv: header `x,y,z[,intensity]` then decimal
// rows; intensity defaults to 0 when the column is absent.
inline PointCloud read_cloud(const std::string& path, CloudFormat format) {
  PointCloud cloud;
  if (format == CloudFormat::bin4) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw FormatError("read_cloud: cannot open " + path);
    const auto size = static_cast<std::size_t>(in.tellg());
    if (size % 16 != 0) {
      throw FormatError(path + ": truncated bin4 record at byte offset " +
                        std::to_string((size / 16) * 16));
    }
    in.seekg(0);
    cloud.points.resize(size / 16);
    for (Point& p : cloud.points) {
      float f[4];
      in.read(reinterpret_cast<char*>(f), sizeof(f));
      p = {f[0], f[1], f[2], f[3]};
    }
    if (!in) throw FormatError("read_cloud: short read from " + path);
    return cloud;
  }

  std::ifstream in(path);
  if (!in) throw FormatError("read_cloud: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError(path + ": missing header line");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool has_intensity;
  if (line == "x,y,z") {
    has_intensity = false;
  } else if (line == "x,y,z,intensity") {
    has_intensity = true;
  } else {
    throw FormatError(path + ": bad header line 1, expected x,y,z[,intensity]");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    double v[4] = {0, 0, 0, 0};
    const int want = has_intensity ? 4 : 3;
    int got = 0;
    while (std::getline(row, cell, ',')) {
      if (got >= want) {
        throw FormatError(path + ": too many columns at line " +
                          std::to_string(line_no));
      }
      v[got++] = detail::parse_cell(cell, path, line_no);
    }
    if (got != want) {
      throw FormatError(path + ": expected " + std::to_string(want) +
                        " columns at line " + std::to_string(line_no));
    }
    cloud.points.push_back({v[0], v[1], v[2], v[3]});
  }
  return cloud;
}

inline PointCloud read_cloud(const std::string& path) {
  return read_cloud(path, infer_cloud_format(path));
}

inline void write_cloud(const PointCloud& cloud, const std::string& path,
                        CloudFormat format) {
  std::ofstream out(path, format == CloudFormat::bin4
                              ? std::ios::binary | std::ios::trunc
                              : std::ios::trunc);
  if (!out) throw FormatError("write_cloud: cannot open " + path);
  if (format == CloudFormat::bin4) {
    for (const Point& p : cloud.points) {
      const float f[4] = {static_cast<float>(p.x), static_cast<float>(p.y),
                          static_cast<float>(p.z),
                          static_cast<float>(p.intensity)};
      out.write(reinterpret_cast<const char*>(f), sizeof(f));
    }
  } else {
    out << "x,y,z,intensity\n";
    char buf[160];
    for (const Point& p : cloud.points) {
      // %.9g round-trips 32-bit reals exactly.
      std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g\n",
                    static_cast<double>(static_cast<float>(p.x)),
                    static_cast<double>(static_cast<float>(p.y)),
                    static_cast<double>(static_cast<float>(p.z)),
                    static_cast<double>(static_cast<float>(p.intensity)));
      out << buf;
    }
  }
  if (!out) throw FormatError("write_cloud: short write to " + path);
}

inline void write_cloud(const PointCloud& cloud, const std::string& path) {
  write_cloud(cloud, path, infer_cloud_format(path));
}

// ---- JSON sidecars: boxes, scenes, dataset manifests ----

inline nlohmann::json box_to_json(const Box& box) {
  return {{"center", box.center}, {"size", box.size}, {"label", box.label}};
}

inline Box box_from_json(const nlohmann::json& j) {
  for (const auto& [key, _] : j.items()) {
    if (key != "center" && key != "size" && key != "label") {
      throw FormatError("box: unknown key '" + key + "'");
    }
  }
  Box box;
  j.at("center").get_to(box.center);
  j.at("size").get_to(box.size);
  if (j.contains("label")) j.at("label").get_to(box.label);
  for (double s : box.size) {
    if (!(s > 0.0)) throw FormatError("box: size must be positive");
  }
  return box;
}

inline void write_boxes(const std::vector<Box>& boxes,
                        const std::string& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const Box& box : boxes) j.push_back(box_to_json(box));
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("write_boxes: cannot open " + path);
  out << j.dump(2) << "\n";
}

inline std::vector<Box> read_boxes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("read_boxes: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  std::vector<Box> boxes;
  for (const auto& item : j) boxes.push_back(box_from_json(item));
  return boxes;
}

inline Scene read_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("read_scene: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "ground_z" && key != "sensor_z" && key != "boxes") {
      throw FormatError(path + ": unknown scene key '" + key + "'");
    }
  }
  Scene scene;
  scene.boxes.clear();
  if (j.contains("ground_z")) j.at("ground_z").get_to(scene.ground_z);
  if (j.contains("sensor_z")) j.at("sensor_z").get_to(scene.sensor_z);
  if (j.contains("boxes")) {
    for (const auto& item : j.at("boxes")) {
      scene.boxes.push_back(box_from_json(item));
    }
  }
  return scene;
}

inline void write_scene(const Scene& scene, const std::string& path) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const Box& box : scene.boxes) boxes.push_back(box_to_json(box));
  const nlohmann::json j = {{"ground_z", scene.ground_z},
                            {"sensor_z", scene.sensor_z},
                            {"boxes", boxes}};
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("write_scene: cannot open " + path);
  out << j.dump(2) << "\n";
}

// One dataset frame on disk: a cloud file plus an optional box sidecar.
struct FrameEntry {
  std::string cloud_path;
  std::string boxes_path;  // empty when the frame has no boxes
};

inline void write_manifest(const std::vector<FrameEntry>& frames,
                           const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const FrameEntry& f : frames) {
    nlohmann::json entry = {{"cloud", f.cloud_path}};
    if (!f.boxes_path.empty()) entry["boxes"] = f.boxes_path;
    arr.push_back(entry);
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("write_manifest: cannot open " + path);
  out << nlohmann::json{{"frames", arr}}.dump(2) << "\n";
}

// Paths in the manifest are relative to the manifest's directory.
inline std::vector<FrameEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("read_manifest: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "frames") {
      throw FormatError(path + ": unknown manifest key '" + key + "'");
    }
  }
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<FrameEntry> frames;
  for (const auto& entry : j.at("frames")) {
    for (const auto& [key, _] : entry.items()) {
      if (key != "cloud" && key != "boxes") {
        throw FormatError(path + ": unknown frame key '" + key + "'");
      }
    }
    FrameEntry f;
    f.cloud_path = (base / entry.at("cloud").get<std::string>()).string();
    if (entry.contains("boxes")) {
      f.boxes_path = (base / entry.at("boxes").get<std::string>()).string();
    }
    frames.push_back(f);
  }
  return frames;
}

}  // namespace ldr
