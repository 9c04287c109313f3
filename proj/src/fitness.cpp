#include "gentrack/fitness.hpp"

#include <algorithm>
#include <cmath>

namespace gentrack {

FitnessWeights FitnessWeights::from(const TrackerConfig& cfg) {
  FitnessWeights w;
  w.lambda_s = cfg.lambda_s;
  w.lambda_m = cfg.lambda_m;
  w.sigma_h = cfg.sigma_h;
  w.sigma_p = cfg.sigma_p;
  w.sigma_i = cfg.sigma_i;
  w.xi_p = cfg.xi_p;
  w.xi_v = cfg.xi_v;
  w.social = cfg.variant == Variant::PSOSocial;
  return w;
}

double motion_fitness(const BBox& a, const BBox& b) {
  const double d_max = diagonal(a) + diagonal(b);
  if (d_max <= 0.0) return 0.0;
  return 1.0 - std::min(center_distance(a, b), d_max) / d_max;
}

double pair_fitness(const BBox& a, const FeatureVector& a_feat, const BBox& b,
                    const FeatureVector& b_feat, double lambda_s, double lambda_m) {
  const double f = lambda_s * cosine_similarity(a_feat, b_feat) +
                   lambda_m * motion_fitness(a, b);
  return std::clamp(f, 0.0, 1.0);
}

double social_fitness(const BBox& p_state, const Velocity4& p_vel,
                      std::span<const Neighbor> neighbors, double neighbor_range,
                      double max_speed, double xi_p, double xi_v) {
  if (neighbors.empty()) return 1.0;
  const double reach = 2.0 * neighbor_range;
  double spread = 0.0;
  double speed_gap = 0.0;
  for (const auto& n : neighbors) {
    spread += std::min(center_distance(p_state, n.state), reach) / reach;
    const double gap = std::hypot(p_vel.du - n.vel.du, p_vel.dv - n.vel.dv);
    speed_gap += std::min(gap, max_speed) / max_speed;
  }
  const double count = static_cast<double>(neighbors.size());
  return std::clamp(xi_p * spread / count + xi_v * speed_gap / count, 0.0, 1.0);
}

double compose(double f_history, double f_explore, double f_social,
               const FitnessWeights& w) {
  double f = w.sigma_h * f_history + w.sigma_p * f_explore;
  if (w.social) f += w.sigma_i * f_social;
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace gentrack
