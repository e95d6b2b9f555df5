#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldr/beams.hpp"
#include "ldr/geom.hpp"
#include "ldr/rng.hpp"

namespace ldr {

enum class ResampleKind { down, up, none };

// One sampled resampling operation. For kind == down, keep_every is C,
// dropout is P and offset selects which bin of each group of C is kept;
// for kind == up, interp_factor is S.
struct ResampleSpec {
  ResampleKind kind = ResampleKind::none;
  int keep_every = 1;
  double dropout = 0.0;
  int interp_factor = 2;
  int offset = 0;
};

inline const char* to_string(ResampleKind k) {
  switch (k) {
    case ResampleKind::down: return "down";
    case ResampleKind::up: return "up";
    default: return "none";
  }
}

inline std::string op_name(const ResampleSpec& spec) {
  if (spec.kind == ResampleKind::down) {
    return "down" + std::to_string(spec.keep_every);
  }
  if (spec.kind == ResampleKind::up) {
    return "up" + std::to_string(spec.interp_factor);
  }
  return "none";
}

namespace detail {

inline void require_labeled(const PointCloud& cloud, const char* op) {
  if (!cloud.labeled()) {
    throw InvalidInputError(std::string(op) + ": cloud has no bin labels");
  }
  if (cloud.bin_labels->size() != cloud.size()) {
    throw InvalidInputError(std::string(op) +
                            ": bin label count does not match point count");
  }
}

}  // namespace detail

// Keeps the points of every C-th bin (bin index k with k mod C == offset),
// then drops each survivor independently with probability dropout. Point
// order and bin labels are preserved among survivors.
inline PointCloud downsample(const PointCloud& cloud, int keep_every,
                             double dropout, int offset, RngState& rng) {
  detail::require_labeled(cloud, "downsample");
  if (keep_every < 1) throw InvalidInputError("downsample: C must be >= 1");
  if (offset < 0 || offset >= keep_every) {
    throw InvalidInputError("downsample: offset must lie in [0, C)");
  }
  if (dropout < 0.0 || dropout > 1.0) {
    throw InvalidInputError("downsample: dropout must lie in [0, 1]");
  }

  PointCloud out;
  out.points.reserve(cloud.size() / static_cast<std::size_t>(keep_every) + 1);
  std::vector<std::uint32_t> labels;
  const auto& in_labels = *cloud.bin_labels;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (static_cast<int>(in_labels[i]) % keep_every != offset) continue;
    if (dropout > 0.0 && rng.next_unit() < dropout) continue;
    out.points.push_back(cloud.points[i]);
    labels.push_back(in_labels[i]);
  }
  out.bin_labels = std::move(labels);
  return out;
}

inline PointCloud downsample(const PointCloud& cloud, const ResampleSpec& spec,
                             RngState& rng) {
  return downsample(cloud, spec.keep_every, spec.dropout, spec.offset, rng);
}

// Pairs each point of bin k with the nearest-azimuth point of bin k+1
// under 2*pi wrap-around. Pairs farther apart than max_gap are dropped;
// when max_gap is absent it defaults to twice the median azimuth step
// within bin k (no limit if bin k has fewer than two points). Ties go to
// the candidate with the smaller azimuth. Returns (index in bin k,
// index in bin k+1) pairs in bin k's input order.
inline std::vector<std::pair<std::size_t, std::size_t>> match_across_bins(
    const std::vector<SphPoint>& bin_k, const std::vector<SphPoint>& bin_k1,
    std::optional<double> max_gap = std::nullopt) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (bin_k.empty() || bin_k1.empty()) return pairs;

  std::vector<std::size_t> order(bin_k1.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bin_k1[a].azimuth < bin_k1[b].azimuth;
  });
  std::vector<double> sorted_az(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted_az[i] = bin_k1[order[i]].azimuth;
  }

  double gap_limit;
  if (max_gap.has_value()) {
    gap_limit = *max_gap;
  } else if (bin_k.size() < 2) {
    gap_limit = std::numeric_limits<double>::infinity();
  } else {
    std::vector<double> az_k(bin_k.size());
    for (std::size_t i = 0; i < bin_k.size(); ++i) az_k[i] = bin_k[i].azimuth;
    std::sort(az_k.begin(), az_k.end());
    std::vector<double> steps(az_k.size() - 1);
    for (std::size_t i = 0; i + 1 < az_k.size(); ++i) {
      steps[i] = az_k[i + 1] - az_k[i];
    }
    std::nth_element(steps.begin(), steps.begin() + steps.size() / 2,
                     steps.end());
    gap_limit = 2.0 * steps[steps.size() / 2];
  }

  for (std::size_t i = 0; i < bin_k.size(); ++i) {
    const double az = bin_k[i].azimuth;
    // Nearest in sorted order plus the two wrap candidates.
    const auto it = std::lower_bound(sorted_az.begin(), sorted_az.end(), az);
    std::size_t candidates[4];
    std::size_t n_cand = 0;
    const std::size_t pos = static_cast<std::size_t>(it - sorted_az.begin());
    if (pos < sorted_az.size()) candidates[n_cand++] = pos;
    if (pos > 0) candidates[n_cand++] = pos - 1;
    candidates[n_cand++] = 0;
    candidates[n_cand++] = sorted_az.size() - 1;

    std::size_t best = order[candidates[0]];
    double best_gap = angular_gap(az, bin_k1[best].azimuth);
    for (std::size_t c = 1; c < n_cand; ++c) {
      const std::size_t j = order[candidates[c]];
      const double gap = angular_gap(az, bin_k1[j].azimuth);
      if (gap < best_gap ||
          (gap == best_gap && bin_k1[j].azimuth < bin_k1[best].azimuth)) {
        best = j;
        best_gap = gap;
      }
    }
    if (best_gap <= gap_limit) pairs.emplace_back(i, best);
  }
  return pairs;
}

// Inserts interp_factor - 1 synthetic beam layers between each adjacent
// bin pair by linear interpolation of (range, azimuth, polar) between
// matched point pairs; the azimuth moves along the shortest arc and the
// intensity is blended with the same weights. All original points are
// kept unchanged in front of the new ones; the output carries no bin
// labels (they no longer index the source model). A cloud with fewer
// than two non-empty bins is returned unchanged.
inline PointCloud upsample(const PointCloud& cloud, const BeamModel& model,
                           int interp_factor,
                           std::optional<double> max_gap = std::nullopt) {
  detail::require_labeled(cloud, "upsample");
  if (interp_factor < 2) {
    throw InvalidInputError("upsample: S must be >= 2");
  }

  std::vector<std::vector<std::size_t>> by_bin(model.bin_count);
  const auto& labels = *cloud.bin_labels;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    by_bin[std::min<std::uint32_t>(labels[i], model.bin_count - 1)].push_back(i);
  }
  int non_empty = 0;
  for (const auto& bin : by_bin) non_empty += bin.empty() ? 0 : 1;
  if (non_empty < 2) return cloud;

  std::vector<SphPoint> sph(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    sph[i] = cart_to_sph(cloud.points[i]);
  }

  PointCloud out;
  out.points = cloud.points;

  std::vector<SphPoint> lower, upper;
  for (int k = 0; k + 1 < model.bin_count; ++k) {
    if (by_bin[k].empty() || by_bin[k + 1].empty()) continue;
    lower.clear();
    upper.clear();
    for (std::size_t i : by_bin[k]) lower.push_back(sph[i]);
    for (std::size_t i : by_bin[k + 1]) upper.push_back(sph[i]);

    for (const auto& [li, ui] : match_across_bins(lower, upper, max_gap)) {
      const SphPoint& a = lower[li];
      const SphPoint& b = upper[ui];
      const double az_delta = wrap_angle(b.azimuth - a.azimuth);
      const double int_a = cloud.points[by_bin[k][li]].intensity;
      const double int_b = cloud.points[by_bin[k + 1][ui]].intensity;
      for (int s = 1; s < interp_factor; ++s) {
        const double lam =
            static_cast<double>(s) / static_cast<double>(interp_factor);
        SphPoint mid;
        mid.range = lam * a.range + (1.0 - lam) * b.range;
        mid.polar = lam * a.polar + (1.0 - lam) * b.polar;
        mid.azimuth = wrap_angle(a.azimuth + (1.0 - lam) * az_delta);
        out.points.push_back(
            sph_to_cart(mid, lam * int_a + (1.0 - lam) * int_b));
      }
    }
  }
  return out;
}

inline PointCloud upsample(const PointCloud& cloud, const BeamModel& model,
                           const ResampleSpec& spec) {
  return upsample(cloud, model, spec.interp_factor);
}

// Knobs for the four-way augmentation draw.
struct AugmentPolicy {
  double dropout = 0.1;  // P used by the down-sampling variants
};

// Draws one of {2x down, 3x down, none, 2x up} uniformly and applies it.
// Down variants additionally draw a uniform keep-offset in [0, C). The
// returned spec is exactly the operation applied, so replaying it on the
// same rng sub-stream reproduces the output.
inline std::pair<PointCloud, ResampleSpec> augment(const PointCloud& cloud,
                                                   const BeamModel& model,
                                                   const AugmentPolicy& policy,
                                                   RngState& rng) {
  detail::require_labeled(cloud, "augment");
  ResampleSpec spec;
  switch (rng.next_below(4)) {
    case 0:
      spec.kind = ResampleKind::down;
      spec.keep_every = 2;
      break;
    case 1:
      spec.kind = ResampleKind::down;
      spec.keep_every = 3;
      break;
    case 2:
      spec.kind = ResampleKind::none;
      break;
    default:
      spec.kind = ResampleKind::up;
      spec.interp_factor = 2;
      break;
  }
  if (spec.kind == ResampleKind::down) {
    spec.dropout = policy.dropout;
    spec.offset = static_cast<int>(rng.next_below(spec.keep_every));
    return {downsample(cloud, spec, rng), spec};
  }
  if (spec.kind == ResampleKind::up) {
    return {upsample(cloud, model, spec), spec};
  }
  return {cloud, spec};
}

}  // namespace ldr
