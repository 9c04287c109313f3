#pragma once

#include <span>
#include <vector>

#include "gentrack/config.hpp"
#include "gentrack/fitness.hpp"
#include "gentrack/image.hpp"
#include "gentrack/motion.hpp"
#include "gentrack/rng.hpp"
#include "gentrack/track.hpp"

namespace gentrack {

struct SwarmResult {
  /// Personal bests of every particle after the final iteration.
  std::vector<Particle> particles;
  BBox gbest_state;
  double gbest_fitness = 0.0;
  /// History component of the global best's fitness.
  double gbest_history_fitness = 0.0;
  /// Global best fitness after each iteration.
  std::vector<double> gbest_trace;
};

/// Draws a fresh swarm from the motion model. FromOptimum perturbs the
/// track's last optimum; FromParticles perturbs each previous particle
/// (falling back to the optimum when the track has too few).
std::vector<Particle> init_swarm(const Track& track, int count,
                                 const MotionBounds& bounds,
                                 const MotionParams& params, InitMode mode,
                                 Rng& rng);

/// Refines the track's current swarm (`track.particles`) against the frame.
/// Maximizes fitness; bests are replaced only on strict improvement.
SwarmResult run_pso(const Track& track, const GrayImage& image,
                    std::span<const Neighbor> neighbors,
                    const TrackerConfig& cfg, Rng& rng);

/// Post-swarm resampling of low-fitness particles.
std::vector<Particle> resample(std::vector<Particle> particles,
                               const BBox& gbest_state, double gbest_fitness,
                               ResampleMode mode, double threshold);

}  // namespace gentrack
