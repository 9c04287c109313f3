#include "gentrack/tracker.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "gentrack/association.hpp"
#include "gentrack/error.hpp"
#include "gentrack/lifecycle.hpp"
#include "gentrack/motion.hpp"
#include "gentrack/pso.hpp"

namespace gentrack {

namespace {

// Runs fn(i) for i in [0,n) on up to `threads` workers with a fixed
// contiguous partition. Callers only write to slot i.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

Tracker::Tracker(TrackerConfig cfg) { reset(std::move(cfg)); }

void Tracker::reset(TrackerConfig cfg) {
  cfg.validate();
  cfg_ = std::move(cfg);
  tracks_.clear();
  next_id_ = 0;
  last_frame_ = -1;
  started_ = false;
  unmatched_dets_.clear();
}

std::vector<TrackOutput> Tracker::step(const FrameInput& frame) {
  if (started_ && frame.index <= last_frame_) {
    throw Error("frame " + std::to_string(frame.index) +
                " is not after frame " + std::to_string(last_frame_));
  }
  if (frame.image.empty()) throw Error("frame image is empty");
  started_ = true;
  last_frame_ = frame.index;

  const int width = frame.image.width();
  const int height = frame.image.height();
  const MotionParams params = MotionParams::from(cfg_);

  // Frame-start snapshot; social terms read only this.
  std::vector<NeighborCandidate> snapshot;
  snapshot.reserve(tracks_.size());
  for (const auto& t : tracks_) snapshot.push_back({t.id, t.state, t.vel});

  // Particle sampling (and swarm refinement), independent per track.
  std::vector<std::optional<SwarmResult>> swarms(tracks_.size());
  parallel_for(tracks_.size(), cfg_.threads, [&](std::size_t i) {
    Track& t = tracks_[i];
    const MotionBounds bounds = bounds_for(t.state, params);
    t.particles = init_swarm(t, cfg_.particles, bounds, params, cfg_.init_mode, t.rng);
    if (cfg_.variant == Variant::Basic) return;
    std::vector<Neighbor> neighbors;
    if (cfg_.variant == Variant::PSOSocial) {
      neighbors = neighbor_search(t, snapshot, false);
    }
    SwarmResult swarm = run_pso(t, frame.image, neighbors, cfg_, t.rng);
    t.particles = resample(swarm.particles, swarm.gbest_state, swarm.gbest_fitness,
                           cfg_.resample_mode, cfg_.discard_threshold);
    swarms[i] = std::move(swarm);
  });

  const CostMatrix costs = cost_matrix(tracks_, frame.detections, cfg_);
  const Assignment assignment = solve(costs, cfg_.gate_cost);

  for (const auto& pair : assignment.pairs) {
    update_matched(tracks_[pair.track], frame.detections[pair.detection], frame.image, cfg_);
  }

  // Strong tracks are seen at their detection, weak ones at the previous optimum.
  std::vector<NeighborCandidate> settled = snapshot;
  for (const auto& pair : assignment.pairs) {
    const Track& t = tracks_[pair.track];
    settled[pair.track] = {t.id, t.state, t.vel};
  }

  for (std::size_t i : assignment.unmatched_tracks) {
    Track& t = tracks_[i];
    const bool exited = has_exited(t, width, height);
    switch (cfg_.variant) {
      case Variant::Basic:
        update_weak_basic(t, cfg_);
        break;
      case Variant::PSO:
        update_weak_pso(t, *swarms[i], cfg_);
        break;
      case Variant::PSOSocial:
        update_weak_social(t, *swarms[i], settled, cfg_);
        break;
    }
    apply_entrance_aging(t, width, height, cfg_);
    ++t.missed;
    if (exited) t.age = cfg_.max_age;
  }

  unmatched_dets_ = assignment.unmatched_detections;
  for (std::size_t j : assignment.unmatched_detections) {
    tracks_.push_back(spawn(frame.detections[j], next_id_++, frame.image, cfg_.seed));
  }

  tracks_ = prune(std::move(tracks_), cfg_);

  std::vector<TrackOutput> out;
  out.reserve(tracks_.size());
  for (const auto& t : tracks_) {
    out.push_back({frame.index, t.id, t.state, t.status, t.penalty, t.recovering});
  }
  std::sort(out.begin(), out.end(),
            [](const TrackOutput& a, const TrackOutput& b) { return a.id < b.id; });
  return out;
}

std::vector<std::vector<TrackOutput>> run_sequence(const TrackerConfig& cfg,
                                                   std::span<const FrameInput> frames) {
  Tracker tracker(cfg);
  std::vector<std::vector<TrackOutput>> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(tracker.step(f));
  return out;
}

}  // namespace gentrack
