#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gentrack/geometry.hpp"
#include "gentrack/image.hpp"
#include "gentrack/sequence.hpp"

namespace gentrack::synth {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct TargetSpec {
  int birth = 0;   // first frame present
  int death = 0;   // first frame absent
  std::vector<Point> waypoints;  // center path, traversed at constant speed
  double w = 40.0;
  double h = 80.0;
  std::uint64_t texture_seed = 0;
  /// Frames [from, to) in which this target's detections are suppressed.
  std::vector<std::pair<int, int>> hidden;
};

/// Static foreground rectangle drawn over every target.
struct Occluder {
  BBox box;
  std::uint8_t intensity = 60;
};

struct NoiseModel {
  double center_jitter = 0.0;  // std dev, px
  double size_jitter = 0.0;    // std dev, px
  double dropout = 0.0;
  double false_positive_rate = 0.0;  // expected false positives per frame
  double fp_conf_min = 0.05;
  double fp_conf_max = 0.5;
  double min_conf = 0.05;
};

struct Scenario {
  int width = 640;
  int height = 480;
  int duration = 60;
  std::vector<TargetSpec> targets;
  std::vector<Occluder> occluders;
  NoiseModel noise;
  std::uint8_t background = 100;
  std::uint64_t seed = 0;
};

struct Generated {
  std::vector<GrayImage> frames;
  Sequence ground_truth;
  std::vector<std::vector<Detection>> detections;  // per frame
};

/// Renders frames, ground truth and degraded detections. Textures are
/// re-seeded until every pair of targets is distinguishable by HoG.
Generated generate(Scenario scenario);

/// Ground-truth box of a target at a frame (clamped to the image).
BBox target_box(const Scenario& scenario, const TargetSpec& target, int frame);

/// Presets: "crossing", "occlusion5", "churn10".
Scenario preset(std::string_view name, std::uint64_t seed = 0);

/// Highest pairwise HoG cosine between target textures.
double max_texture_similarity(const Scenario& scenario);

}  // namespace gentrack::synth
