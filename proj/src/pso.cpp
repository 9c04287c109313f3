#include "gentrack/pso.hpp"

#include <algorithm>
#include <cmath>

namespace gentrack {

std::vector<Particle> init_swarm(const Track& track, int count,
                                 const MotionBounds& bounds,
                                 const MotionParams& params, InitMode mode,
                                 Rng& rng) {
  std::vector<Particle> swarm;
  swarm.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < count; ++s) {
    BBox origin = track.state;
    Velocity4 origin_vel = track.vel;
    if (mode == InitMode::FromParticles &&
        static_cast<std::size_t>(s) < track.particles.size()) {
      origin = track.particles[s].state;
      origin_vel = track.particles[s].vel;
    }
    auto [state, vel] = propagate(origin, origin_vel, bounds, params, rng);
    Particle p;
    p.state = state;
    p.vel = vel;
    p.origin = origin;
    p.pbest_state = state;
    swarm.push_back(p);
  }
  return swarm;
}

SwarmResult run_pso(const Track& track, const GrayImage& image,
                    std::span<const Neighbor> neighbors,
                    const TrackerConfig& cfg, Rng& rng) {
  const MotionParams params = MotionParams::from(cfg);
  const MotionBounds bounds = bounds_for(track.state, params);
  const FitnessWeights weights = FitnessWeights::from(cfg);
  const double neighbor_range = diagonal(track.state);
  const double max_speed = std::hypot(bounds.v_max[0] + bounds.uv_max[0],
                                      bounds.v_max[1] + bounds.uv_max[1]);

  std::vector<Particle> swarm = track.particles;
  const std::size_t n = swarm.size();
  std::vector<BBox> prev_state(n);
  std::vector<FeatureVector> prev_feat(n);
  std::vector<Velocity4> pbest_vel(n);
  std::vector<double> pbest_history(n, 0.0);

  SwarmResult result;
  bool have_gbest = false;
  const int iters = std::max(cfg.pso_iters, 1);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t s = 0; s < n; ++s) {
      Particle& p = swarm[s];
      FeatureVector feat = extract_features(image, p.state);
      if (it == 0) {
        // No earlier iteration: exploration is measured against the state the
        // particle was propagated from.
        prev_state[s] = p.origin;
        prev_feat[s] = extract_features(image, p.origin);
      }
      FitnessBreakdown fb;
      fb.f_history = pair_fitness(p.state, feat, track.state, track.appearance,
                                  weights.lambda_s, weights.lambda_m);
      fb.f_explore = pair_fitness(p.state, feat, prev_state[s], prev_feat[s],
                                  weights.lambda_s, weights.lambda_m);
      if (weights.social) {
        fb.f_social = social_fitness(p.state, p.vel, neighbors, neighbor_range,
                                     max_speed, weights.xi_p, weights.xi_v);
      }
      fb.combined = compose(fb.f_history, fb.f_explore, fb.f_social, weights);
      p.fitness = fb.combined;

      if (it == 0 || p.fitness > p.pbest_fitness) {
        p.pbest_state = p.state;
        p.pbest_fitness = p.fitness;
        pbest_vel[s] = p.vel;
        pbest_history[s] = fb.f_history;
      }
      if (!have_gbest || p.pbest_fitness > result.gbest_fitness) {
        have_gbest = true;
        result.gbest_state = p.pbest_state;
        result.gbest_fitness = p.pbest_fitness;
        result.gbest_history_fitness = pbest_history[s];
      }

      if (it + 1 == iters) continue;
      prev_state[s] = p.state;
      prev_feat[s] = std::move(feat);
      BBox next = p.state;
      for (int j = 0; j < 4; ++j) {
        const double r_p = rng.uniform();
        const double r_g = rng.uniform();
        double v = cfg.eta * p.pso_vel[j] +
                   r_p * cfg.phi_p * (p.pbest_state[j] - p.state[j]) +
                   r_g * cfg.phi_g * (result.gbest_state[j] - p.state[j]);
        v = std::clamp(v, -bounds.v_max[j], bounds.v_max[j]);
        p.pso_vel[j] = v;
        next[j] += v;
        p.vel[j] = std::clamp(p.vel[j] + v, -bounds.v_max[j], bounds.v_max[j]);
      }
      next.w = std::max(next.w, 1.0);
      next.h = std::max(next.h, 1.0);
      p.state = clamp_to_image(next, image.width(), image.height());
    }
    result.gbest_trace.push_back(result.gbest_fitness);
  }

  result.particles.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    Particle best = swarm[s];
    best.state = best.pbest_state;
    best.vel = pbest_vel[s];
    best.fitness = best.pbest_fitness;
    result.particles.push_back(best);
  }
  if (!have_gbest) {
    result.gbest_state = track.state;
  }
  return result;
}

std::vector<Particle> resample(std::vector<Particle> particles,
                               const BBox& gbest_state, double gbest_fitness,
                               ResampleMode mode, double threshold) {
  if (particles.empty() || mode == ResampleMode::None) return particles;

  if (mode == ResampleMode::Discard) {
    const auto best = std::max_element(
        particles.begin(), particles.end(),
        [](const Particle& a, const Particle& b) { return a.fitness < b.fitness; });
    if (best->fitness < threshold) return {*best};
    std::erase_if(particles, [&](const Particle& p) { return p.fitness < threshold; });
    return particles;
  }

  for (auto& p : particles) {
    if (p.fitness < threshold) {
      p.state = gbest_state;
      p.pbest_state = gbest_state;
      p.fitness = gbest_fitness;
      p.pbest_fitness = gbest_fitness;
    }
  }
  return particles;
}

}  // namespace gentrack
