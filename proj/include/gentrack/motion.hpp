#pragma once

#include <array>
#include <utility>

#include "gentrack/config.hpp"
#include "gentrack/geometry.hpp"
#include "gentrack/rng.hpp"

namespace gentrack {

/// State-dependent perturbation bounds and velocity cap, per coordinate.
struct MotionBounds {
  std::array<double, 4> ux_max{};  // position perturbation (px)
  std::array<double, 4> uv_max{};  // velocity perturbation (px/frame)
  std::array<double, 4> v_max{};   // velocity cap (px/frame)
};

struct MotionParams {
  double eps_x = 1.0;
  double eps_v = 1.0;
  double lambda_x = 1.0;
  double lambda_v = 1.0;
  double pos_scale = 0.5;
  double vel_scale = 0.25;
  double vmax_pos_scale = 0.5;
  double vmax_size_scale = 0.25;

  static MotionParams from(const TrackerConfig& cfg);
};

MotionBounds bounds_for(const BBox& state, const MotionParams& params = {});

/// Caps every component at +-v_max.
Velocity4 clamp_velocity(const Velocity4& vel, const MotionBounds& bounds);

/// One step of the random motion model:
///   V' = clamp(V + eps_v * U_V, +-v_max)
///   X' = X + lambda_v * V' + lambda_x * eps_x * U_X
/// with U_V, U_X uniform within the bounds. Width and height floor at 1 px.
std::pair<BBox, Velocity4> propagate(const BBox& state, const Velocity4& vel,
                                     const MotionBounds& bounds,
                                     const MotionParams& params, Rng& rng);

}  // namespace gentrack
