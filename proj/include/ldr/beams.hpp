#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ldr/geom.hpp"

namespace ldr {

// Uniform partition of a cloud's vertical (polar) angle range into
// bin_count bins. Immutable after construction.
struct BeamModel {
  int bin_count = 0;           // M
  double phi_min = 0.0;        // polar radians
  double phi_max = 0.0;
  std::vector<double> bin_edges;  // bin_count + 1 ascending edges

  double bin_width() const {
    return (phi_max - phi_min) / static_cast<double>(bin_count);
  }
};

// Clamped half-open bin lookup: bin_edges[k] <= phi < bin_edges[k+1],
// phi == phi_max lands in the top bin, out-of-range values clamp to the
// nearest boundary bin so a model fitted on one frame stays total on
// any other.
inline int bin_of(const BeamModel& model, double polar) {
  if (model.bin_count == 1) return 0;
  if (polar < model.phi_min) return 0;
  if (polar >= model.phi_max) return model.bin_count - 1;
  const auto it = std::upper_bound(model.bin_edges.begin(),
                                   model.bin_edges.end(), polar);
  int k = static_cast<int>(it - model.bin_edges.begin()) - 1;
  return std::clamp(k, 0, model.bin_count - 1);
}

// Fits the vertical-angle range of a cloud: gathers polar angles, drops
// values farther than 3.1 population standard deviations from the mean
// (a single pass; the outliers are excluded from range fitting only),
// and splits [min, max] of the survivors into bin_count uniform bins.
inline BeamModel fit_beam_model(const PointCloud& cloud, int bin_count) {
  if (cloud.empty()) throw EmptyInputError("fit_beam_model: empty cloud");
  if (bin_count < 1) {
    throw InvalidInputError("fit_beam_model: bin count must be >= 1");
  }

  std::vector<double> polar;
  polar.reserve(cloud.size());
  for (const Point& p : cloud.points) polar.push_back(cart_to_sph(p).polar);

  double mean = 0.0;
  for (double v : polar) mean += v;
  mean /= static_cast<double>(polar.size());
  double var = 0.0;
  for (double v : polar) var += (v - mean) * (v - mean);
  var /= static_cast<double>(polar.size());
  const double threshold = 3.1 * std::sqrt(var);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : polar) {
    if (std::abs(v - mean) > threshold) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  if (lo >= hi && bin_count > 1) {
    throw DegenerateError(
        "fit_beam_model: degenerate vertical-angle range with bin count > 1");
  }

  BeamModel model;
  model.bin_count = bin_count;
  model.phi_min = lo;
  model.phi_max = hi;
  model.bin_edges.resize(bin_count + 1);
  for (int i = 0; i <= bin_count; ++i) {
    model.bin_edges[i] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bin_count);
  }
  model.bin_edges.front() = lo;
  model.bin_edges.back() = hi;
  return model;
}

// Returns a copy of the cloud carrying one bin label per point; point
// order is preserved and labeling is total over finite clouds.
inline PointCloud label_bins(const PointCloud& cloud, const BeamModel& model) {
  PointCloud out = cloud;
  std::vector<std::uint32_t> labels;
  labels.reserve(cloud.size());
  for (const Point& p : cloud.points) {
    labels.push_back(
        static_cast<std::uint32_t>(bin_of(model, cart_to_sph(p).polar)));
  }
  out.bin_labels = std::move(labels);
  return out;
}

}  // namespace ldr
