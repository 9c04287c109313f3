#pragma once

#include <span>
#include <vector>

#include "gentrack/geometry.hpp"
#include "gentrack/image.hpp"

namespace gentrack {

/// HoG geometry: the box is resampled to a fixed patch, split into square
/// cells, and each cell contributes an L2-normalized unsigned orientation
/// histogram.
namespace hog {
inline constexpr int kPatchSize = 64;
inline constexpr int kCellSize = 8;
inline constexpr int kCellsPerSide = kPatchSize / kCellSize;
inline constexpr int kBins = 9;
inline constexpr int kLength = kCellsPerSide * kCellsPerSide * kBins;
inline constexpr double kNormEps = 1e-6;
}  // namespace hog

struct FeatureVector {
  std::vector<float> values;
  /// Set when the clamped patch was too small to describe (< 2x2 px).
  bool degenerate = false;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

FeatureVector extract_features(const GrayImage& image, const BBox& box);

/// Cosine similarity of two non-negative vectors; 0 when either is all zeros.
/// Throws std::invalid_argument on a length mismatch.
double cosine_similarity(const FeatureVector& a, const FeatureVector& b);
double cosine_similarity(std::span<const float> a, std::span<const float> b);

}  // namespace gentrack
