#pragma once

#include <span>

#include "gentrack/appearance.hpp"
#include "gentrack/config.hpp"
#include "gentrack/geometry.hpp"

namespace gentrack {

/// State and velocity of a neighbouring target as seen by the social terms.
struct Neighbor {
  BBox state;
  Velocity4 vel;
};

struct FitnessWeights {
  double lambda_s = 0.5;
  double lambda_m = 0.5;
  double sigma_h = 0.7;
  double sigma_p = 0.1;
  double sigma_i = 0.2;
  double xi_p = 0.5;
  double xi_v = 0.5;
  bool social = true;

  static FitnessWeights from(const TrackerConfig& cfg);
};

struct FitnessBreakdown {
  double f_history = 0.0;
  double f_explore = 0.0;
  double f_social = 1.0;
  double combined = 0.0;
};

/// 1 - min(d, d_max)/d_max on box centers, with d_max the sum of diagonals.
double motion_fitness(const BBox& a, const BBox& b);

/// lambda_s * cosine(a_feat, b_feat) + lambda_m * motion_fitness(a, b).
double pair_fitness(const BBox& a, const FeatureVector& a_feat, const BBox& b,
                    const FeatureVector& b_feat, double lambda_s = 0.5,
                    double lambda_m = 0.5);

/// Divergence reward of a particle from its target's neighbours. Distances
/// saturate at 2*neighbor_range, velocity gaps (planar) at max_speed.
/// Returns 1 with no neighbours.
double social_fitness(const BBox& p_state, const Velocity4& p_vel,
                      std::span<const Neighbor> neighbors, double neighbor_range,
                      double max_speed, double xi_p = 0.5, double xi_v = 0.5);

/// Convex combination of the fitness components; the social term only
/// contributes when `w.social` is set.
double compose(double f_history, double f_explore, double f_social,
               const FitnessWeights& w);

}  // namespace gentrack
