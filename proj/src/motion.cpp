#include "gentrack/motion.hpp"

#include <algorithm>

namespace gentrack {

MotionParams MotionParams::from(const TrackerConfig& cfg) {
  MotionParams p;
  p.eps_x = cfg.eps_x;
  p.eps_v = cfg.eps_v;
  p.lambda_x = cfg.lambda_x;
  p.lambda_v = cfg.lambda_v;
  p.pos_scale = cfg.motion_pos_scale;
  p.vel_scale = cfg.motion_vel_scale;
  p.vmax_pos_scale = cfg.vmax_pos_scale;
  p.vmax_size_scale = cfg.vmax_size_scale;
  return p;
}

MotionBounds bounds_for(const BBox& state, const MotionParams& params) {
  const std::array<double, 4> dims{state.w, state.h, state.w, state.h};
  const double diag = diagonal(state);
  MotionBounds b;
  for (int i = 0; i < 4; ++i) {
    b.ux_max[i] = params.pos_scale * dims[i];
    b.uv_max[i] = params.vel_scale * dims[i];
  }
  b.v_max = {params.vmax_pos_scale * diag, params.vmax_pos_scale * diag,
             params.vmax_size_scale * state.w, params.vmax_size_scale * state.h};
  return b;
}

Velocity4 clamp_velocity(const Velocity4& vel, const MotionBounds& bounds) {
  Velocity4 out;
  for (int i = 0; i < 4; ++i) {
    out[i] = std::clamp(vel[i], -bounds.v_max[i], bounds.v_max[i]);
  }
  return out;
}

std::pair<BBox, Velocity4> propagate(const BBox& state, const Velocity4& vel,
                                     const MotionBounds& bounds,
                                     const MotionParams& params, Rng& rng) {
  Velocity4 v_next;
  for (int i = 0; i < 4; ++i) {
    v_next[i] = vel[i] + params.eps_v * rng.symmetric(bounds.uv_max[i]);
  }
  v_next = clamp_velocity(v_next, bounds);

  BBox x_next;
  for (int i = 0; i < 4; ++i) {
    x_next[i] = state[i] + params.lambda_v * v_next[i] +
                params.lambda_x * params.eps_x * rng.symmetric(bounds.ux_max[i]);
  }
  x_next.w = std::max(x_next.w, 1.0);
  x_next.h = std::max(x_next.h, 1.0);
  return {x_next, v_next};
}

}  // namespace gentrack
