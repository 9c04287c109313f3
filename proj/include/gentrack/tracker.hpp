#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gentrack/config.hpp"
#include "gentrack/track.hpp"

namespace gentrack {

struct TrackOutput {
  int frame = 0;
  std::uint64_t id = 0;
  BBox bbox;
  TrackStatus status = TrackStatus::New;
  double penalty = 0.0;
  bool recovering = false;
};

/// Per-frame orchestration: swarm sampling, association, state updates and
/// pruning. One `step` per frame, frames strictly increasing.
class Tracker {
 public:
  explicit Tracker(TrackerConfig cfg);

  /// Clears all tracks and the id counter. The variant may only change here.
  void reset(TrackerConfig cfg);

  std::vector<TrackOutput> step(const FrameInput& frame);

  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return cfg_; }
  /// Detection indices of the last frame left unmatched (each spawned a track).
  const std::vector<std::size_t>& unmatched_detections() const { return unmatched_dets_; }

 private:

  TrackerConfig cfg_;
  std::vector<Track> tracks_;
  std::uint64_t next_id_ = 0;
  int last_frame_ = -1;
  bool started_ = false;
  std::vector<std::size_t> unmatched_dets_;
};

std::vector<std::vector<TrackOutput>> run_sequence(const TrackerConfig& cfg,
                                                   std::span<const FrameInput> frames);

}  // namespace gentrack
