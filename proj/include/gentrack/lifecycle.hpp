#pragma once

#include <span>
#include <vector>

#include "gentrack/config.hpp"
#include "gentrack/fitness.hpp"
#include "gentrack/image.hpp"
#include "gentrack/pso.hpp"
#include "gentrack/track.hpp"

namespace gentrack {

/// Track state as seen by neighbour queries: a strong track exposes its
/// matched detection, a weak one its previous optimum.
struct NeighborCandidate {
  std::uint64_t id;
  BBox state;
  Velocity4 vel;
};

Velocity4 smooth_velocity(const Velocity4& now, const Velocity4& prev);

/// Strong-track update from its matched detection.
void update_matched(Track& track, const Detection& det, const GrayImage& image,
                    const TrackerConfig& cfg);

Track spawn(const Detection& det, std::uint64_t id, const GrayImage& image,
            std::uint64_t seed);

/// Coasting update for unmatched tracks in the Basic variant.
void update_weak_basic(Track& track, const TrackerConfig& cfg);

/// Unmatched-track update driven by the swarm's global best.
void update_weak_pso(Track& track, const SwarmResult& swarm,
                     const TrackerConfig& cfg);

/// As update_weak_pso, then nudges the state using its neighbours: position
/// along its own heading toward their mean, size toward their mean size.
/// `neighbors` is the full candidate set; the track's own entry is skipped.
void update_weak_social(Track& track, const SwarmResult& swarm,
                        std::span<const NeighborCandidate> neighbors,
                        const TrackerConfig& cfg);

/// Candidates whose center lies within diagonal(track.state) of the track
/// (twice that when `expanded`). Closed ball; the track itself is excluded.
std::vector<Neighbor> neighbor_search(const Track& track,
                                      std::span<const NeighborCandidate> candidates,
                                      bool expanded);

/// Extra aging for weak tracks inside the image border band.
void apply_entrance_aging(Track& track, int image_width, int image_height,
                          const TrackerConfig& cfg);

/// True when dead reckoning from the last detection has carried the center out of
/// the image.
bool has_exited(const Track& track, int image_width, int image_height);

/// Keeps tracks with age < max_age.
std::vector<Track> prune(std::vector<Track> tracks, const TrackerConfig& cfg);

}  // namespace gentrack
