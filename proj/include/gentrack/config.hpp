#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gentrack {

enum class Variant { Basic, PSO, PSOSocial };
enum class ResampleMode { Discard, ReplaceWithGlobal, None };
enum class InitMode { FromOptimum, FromParticles };

std::string_view to_string(Variant v);
std::string_view to_string(ResampleMode m);
std::string_view to_string(InitMode m);
Variant parse_variant(std::string_view text);
ResampleMode parse_resample_mode(std::string_view text);
InitMode parse_init_mode(std::string_view text);

/// Every tunable of the tracker. Build one with `TrackerConfig::defaults`,
/// which picks the per-variant particle count and fitness weights.
struct TrackerConfig {
  Variant variant = Variant::PSOSocial;

  // Swarm.
  int particles = 8;
  int pso_iters = 10;
  double eta = 0.7;    // inertia
  double phi_p = 1.5;  // cognitive coefficient
  double phi_g = 1.5;  // social coefficient

  // Association cost weights.
  double lambda_p = 0.6;
  double lambda_d = 0.2;
  double lambda_h = 0.2;

  // Pairwise fitness weights (appearance, motion).
  double lambda_s = 0.5;
  double lambda_m = 0.5;

  // Fitness composition (history, exploration, social).
  double sigma_h = 0.7;
  double sigma_p = 0.1;
  double sigma_i = 0.2;

  // Social fitness weights (position, velocity).
  double xi_p = 0.5;
  double xi_v = 0.5;

  // Lifecycle.
  double rho_re = 0.5;
  int max_age = 30;
  double discard_threshold = 0.2;
  double social_step = 0.1;

  // Motion model.
  double eps_x = 1.0;
  double eps_v = 1.0;
  double lambda_x = 1.0;
  double lambda_v = 1.0;
  double motion_pos_scale = 0.5;   // position perturbation bound, fraction of (w,h)
  double motion_vel_scale = 0.25;  // velocity perturbation bound, fraction of (w,h)
  double vmax_pos_scale = 0.5;     // positional velocity cap, fraction of diagonal
  double vmax_size_scale = 0.25;   // size velocity cap, fraction of (w,h)

  double gate_cost = 0.3;
  ResampleMode resample_mode = ResampleMode::ReplaceWithGlobal;
  InitMode init_mode = InitMode::FromOptimum;

  /// Width of the border band in px; unset means 5% of the smaller image side.
  std::optional<double> entrance_margin;

  std::uint64_t seed = 0;

  /// Worker threads for per-target swarms. Output does not depend on it.
  int threads = 1;

  /// Maximum penalty; fixed by the model.
  static constexpr double rho_max = 1.0;

  static TrackerConfig defaults(Variant v);

  double entrance_margin_for(int image_width, int image_height) const;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

}  // namespace gentrack
