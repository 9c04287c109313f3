#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gentrack/appearance.hpp"
#include "gentrack/geometry.hpp"
#include "gentrack/image.hpp"
#include "gentrack/rng.hpp"

namespace gentrack {

/// One candidate state of a target's swarm.
struct Particle {
  BBox state;
  /// Target velocity hypothesis carried by the particle (px/frame).
  Velocity4 vel;
  /// Swarm velocity used by the PSO position update; zero at initialization.
  Velocity4 pso_vel;
  /// State the particle was propagated from this frame.
  BBox origin;
  BBox pbest_state;
  double pbest_fitness = 0.0;
  double fitness = 0.0;
};

enum class TrackStatus { New, Strong, Weak };

struct Track {
  std::uint64_t id = 0;
  BBox state;
  Velocity4 vel;
  double penalty = 0.0;
  int age = 0;
  TrackStatus status = TrackStatus::New;
  /// Weak track whose last update lowered its penalty.
  bool recovering = false;
  FeatureVector appearance;
  /// Box of the last associated detection and frames elapsed since.
  BBox last_seen;
  int missed = 0;
  std::vector<Particle> particles;
  std::optional<std::pair<BBox, double>> last_global_best;
  Rng rng;
};

struct FrameInput {
  int index = 0;
  GrayImage image;
  std::vector<Detection> detections;
};

}  // namespace gentrack
