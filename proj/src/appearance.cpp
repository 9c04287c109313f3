#include "gentrack/appearance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gentrack {

namespace {

using Patch = std::array<float, hog::kPatchSize * hog::kPatchSize>;

struct BinBoundaries {
  std::array<double, hog::kBins - 1> cos{};
  std::array<double, hog::kBins - 1> sin{};
};

const BinBoundaries& boundaries() {
  static const BinBoundaries b = [] {
    BinBoundaries out;
    for (int k = 1; k < hog::kBins; ++k) {
      const double angle = std::numbers::pi * k / hog::kBins;
      out.cos[k - 1] = std::cos(angle);
      out.sin[k - 1] = std::sin(angle);
    }
    return out;
  }();
  return b;
}

// Unsigned orientation bin of a gradient; (gx,gy) already folded to the
// upper half plane so the angle lies in [0, pi).
int orientation_bin(double gx, double gy) {
  const auto& b = boundaries();
  int bin = 0;
  for (int k = 0; k < hog::kBins - 1; ++k) {
    if (b.cos[k] * gy - b.sin[k] * gx >= 0.0) {
      bin = k + 1;
    } else {
      break;
    }
  }
  return bin;
}

}  // namespace

FeatureVector extract_features(const GrayImage& image, const BBox& box) {
  FeatureVector out;
  out.values.assign(hog::kLength, 0.0f);
  if (image.empty()) {
    out.degenerate = true;
    return out;
  }
  const BBox roi = clamp_to_image(box, image.width(), image.height());
  if (roi.w < 2.0 || roi.h < 2.0) {
    out.degenerate = true;
    return out;
  }

  // Nearest-neighbour resample onto the fixed patch grid.
  constexpr int n = hog::kPatchSize;
  Patch patch{};
  std::array<int, n> xs{};
  std::array<int, n> ys{};
  for (int i = 0; i < n; ++i) {
    const double fx = roi.left() + (i + 0.5) * roi.w / n;
    const double fy = roi.top() + (i + 0.5) * roi.h / n;
    xs[i] = std::clamp(static_cast<int>(std::floor(fx)), 0, image.width() - 1);
    ys[i] = std::clamp(static_cast<int>(std::floor(fy)), 0, image.height() - 1);
  }
  for (int py = 0; py < n; ++py) {
    for (int px = 0; px < n; ++px) {
      patch[py * n + px] = static_cast<float>(image.at(xs[px], ys[py]));
    }
  }

  // Central differences with replicated borders, hard-binned by orientation.
  for (int py = 0; py < n; ++py) {
    const int up = std::max(py - 1, 0);
    const int down = std::min(py + 1, n - 1);
    const int cy = py / hog::kCellSize;
    for (int px = 0; px < n; ++px) {
      const int left = std::max(px - 1, 0);
      const int right = std::min(px + 1, n - 1);
      double gx = patch[py * n + right] - patch[py * n + left];
      double gy = patch[down * n + px] - patch[up * n + px];
      if (gx == 0.0 && gy == 0.0) continue;
      if (gy < 0.0 || (gy == 0.0 && gx < 0.0)) {
        gx = -gx;
        gy = -gy;
      }
      const int cx = px / hog::kCellSize;
      const int cell = cy * hog::kCellsPerSide + cx;
      out.values[cell * hog::kBins + orientation_bin(gx, gy)] +=
          static_cast<float>(std::hypot(gx, gy));
    }
  }

  for (int cell = 0; cell < hog::kCellsPerSide * hog::kCellsPerSide; ++cell) {
    float* hist = out.values.data() + cell * hog::kBins;
    double sq = 0.0;
    for (int k = 0; k < hog::kBins; ++k) sq += static_cast<double>(hist[k]) * hist[k];
    const double norm = std::sqrt(sq + hog::kNormEps * hog::kNormEps);
    for (int k = 0; k < hog::kBins; ++k) {
      hist[k] = static_cast<float>(hist[k] / norm);
    }
  }
  return out;
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine_similarity: feature length mismatch");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
  return cosine_similarity(std::span<const float>(a.values),
                           std::span<const float>(b.values));
}

}  // namespace gentrack
