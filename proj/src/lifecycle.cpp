#include "gentrack/lifecycle.hpp"

#include <algorithm>
#include <cmath>

#include "gentrack/motion.hpp"

namespace gentrack {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

Velocity4 smooth_velocity(const Velocity4& now, const Velocity4& prev) {
  Velocity4 out;
  for (int i = 0; i < 4; ++i) out[i] = (now[i] + prev[i]) / 2.0;
  return out;
}

void update_matched(Track& track, const Detection& det, const GrayImage& image,
                    const TrackerConfig& cfg) {
  Velocity4 raw;
  for (int i = 0; i < 4; ++i) raw[i] = det.bbox[i] - track.state[i];
  const MotionBounds bounds = bounds_for(det.bbox, MotionParams::from(cfg));
  track.vel = clamp_velocity(smooth_velocity(raw, track.vel), bounds);
  track.state = det.bbox;
  track.last_seen = det.bbox;
  track.missed = 0;
  track.penalty = 0.0;
  track.age = 0;
  track.status = TrackStatus::Strong;
  track.recovering = false;
  track.appearance = extract_features(image, det.bbox);
}

Track spawn(const Detection& det, std::uint64_t id, const GrayImage& image,
            std::uint64_t seed) {
  Track t;
  t.id = id;
  t.state = det.bbox;
  t.last_seen = det.bbox;
  t.status = TrackStatus::New;
  t.appearance = extract_features(image, det.bbox);
  t.rng = Rng(stream_seed(seed, id));
  return t;
}

void update_weak_basic(Track& track, const TrackerConfig& cfg) {
  for (int i = 0; i < 4; ++i) track.state[i] += track.vel[i];
  track.state.w = std::max(track.state.w, 1.0);
  track.state.h = std::max(track.state.h, 1.0);
  track.penalty = std::min(track.penalty + TrackerConfig::rho_max / cfg.max_age,
                           TrackerConfig::rho_max);
  track.age += 1;
  track.status = TrackStatus::Weak;
  track.recovering = false;
}

void update_weak_pso(Track& track, const SwarmResult& swarm,
                     const TrackerConfig& cfg) {
  // The swarm was sampled around the motion prediction, so its best already
  // carries the velocity step.
  track.state = swarm.gbest_state;
  track.last_global_best = std::pair{swarm.gbest_state, swarm.gbest_fitness};

  const double f_g = swarm.gbest_history_fitness;
  const int s = sign(cfg.rho_re - f_g);
  const double delta = TrackerConfig::rho_max * (2.0 - f_g) / cfg.max_age;
  track.penalty = std::clamp(track.penalty + s * delta, 0.0, TrackerConfig::rho_max);
  track.age = std::max(track.age + s, 0);
  track.status = TrackStatus::Weak;
  track.recovering = s < 0;
}

void update_weak_social(Track& track, const SwarmResult& swarm,
                        std::span<const NeighborCandidate> neighbors,
                        const TrackerConfig& cfg) {
  update_weak_pso(track, swarm, cfg);

  auto found = neighbor_search(track, neighbors, false);
  if (found.empty()) found = neighbor_search(track, neighbors, true);
  if (found.empty()) return;

  BBox mean{0.0, 0.0, 0.0, 0.0};
  for (const auto& n : found) {
    for (int i = 0; i < 4; ++i) mean[i] += n.state[i];
  }
  for (int i = 0; i < 4; ++i) mean[i] /= static_cast<double>(found.size());

  const double speed = std::hypot(track.vel.du, track.vel.dv);
  if (speed > 0.0) {
    const double hx = track.vel.du / speed;
    const double hy = track.vel.dv / speed;
    const double along = (mean.u - track.state.u) * hx + (mean.v - track.state.v) * hy;
    track.state.u += cfg.social_step * along * hx;
    track.state.v += cfg.social_step * along * hy;
  }
  track.state.w += cfg.social_step * (mean.w - track.state.w);
  track.state.h += cfg.social_step * (mean.h - track.state.h);
  track.state.w = std::max(track.state.w, 1.0);
  track.state.h = std::max(track.state.h, 1.0);
}

std::vector<Neighbor> neighbor_search(const Track& track,
                                      std::span<const NeighborCandidate> candidates,
                                      bool expanded) {
  const double range = diagonal(track.state) * (expanded ? 2.0 : 1.0);
  std::vector<Neighbor> out;
  for (const auto& c : candidates) {
    if (c.id == track.id) continue;
    if (center_distance(track.state, c.state) <= range) {
      out.push_back({c.state, c.vel});
    }
  }
  return out;
}

void apply_entrance_aging(Track& track, int image_width, int image_height,
                          const TrackerConfig& cfg) {
  const double margin = cfg.entrance_margin_for(image_width, image_height);
  if (in_entrance_area(track.state, image_width, image_height, margin)) {
    track.age += 1;
  }
}

bool has_exited(const Track& track, int image_width, int image_height) {
  const double steps = track.missed + 1.0;
  const double u = track.last_seen.u + steps * track.vel.du;
  const double v = track.last_seen.v + steps * track.vel.dv;
  return u < 0.0 || v < 0.0 || u >= image_width || v >= image_height;
}

std::vector<Track> prune(std::vector<Track> tracks, const TrackerConfig& cfg) {
  std::erase_if(tracks, [&](const Track& t) { return t.age >= cfg.max_age; });
  return tracks;
}

}  // namespace gentrack
