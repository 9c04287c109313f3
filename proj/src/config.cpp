#include "gentrack/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "gentrack/error.hpp"

namespace gentrack {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

constexpr double kSumTolerance = 1e-9;

void require_sum(double sum, const char* what) {
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ConfigError(std::string(what) + " must sum to 1 (got " +
                      std::to_string(sum) + ")");
  }
}

void require_unit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Basic: return "basic";
    case Variant::PSO: return "pso";
    case Variant::PSOSocial: return "pso_social";
  }
  return "?";
}

std::string_view to_string(ResampleMode m) {
  switch (m) {
    case ResampleMode::Discard: return "discard";
    case ResampleMode::ReplaceWithGlobal: return "global";
    case ResampleMode::None: return "none";
  }
  return "?";
}

std::string_view to_string(InitMode m) {
  return m == InitMode::FromOptimum ? "optimum" : "particles";
}

Variant parse_variant(std::string_view text) {
  const auto t = lower(text);
  if (t == "basic") return Variant::Basic;
  if (t == "pso") return Variant::PSO;
  if (t == "pso_social" || t == "psosocial" || t == "social") return Variant::PSOSocial;
  throw ConfigError("unknown variant '" + std::string(text) + "'");
}

ResampleMode parse_resample_mode(std::string_view text) {
  const auto t = lower(text);
  if (t == "discard") return ResampleMode::Discard;
  if (t == "global" || t == "replace" || t == "replace_with_global") {
    return ResampleMode::ReplaceWithGlobal;
  }
  if (t == "none") return ResampleMode::None;
  throw ConfigError("unknown resample mode '" + std::string(text) + "'");
}

InitMode parse_init_mode(std::string_view text) {
  const auto t = lower(text);
  if (t == "optimum" || t == "from_optimum") return InitMode::FromOptimum;
  if (t == "particles" || t == "from_particles") return InitMode::FromParticles;
  throw ConfigError("unknown init mode '" + std::string(text) + "'");
}

TrackerConfig TrackerConfig::defaults(Variant v) {
  TrackerConfig cfg;
  cfg.variant = v;
  switch (v) {
    case Variant::Basic:
      cfg.particles = 8;
      cfg.sigma_h = 0.9;
      cfg.sigma_p = 0.1;
      cfg.sigma_i = 0.0;
      break;
    case Variant::PSO:
      cfg.particles = 8;
      cfg.sigma_h = 0.9;
      cfg.sigma_p = 0.1;
      cfg.sigma_i = 0.0;
      break;
    case Variant::PSOSocial:
      cfg.particles = 8;
      cfg.sigma_h = 0.7;
      cfg.sigma_p = 0.1;
      cfg.sigma_i = 0.2;
      break;
  }
  return cfg;
}

double TrackerConfig::entrance_margin_for(int image_width, int image_height) const {
  if (entrance_margin) return *entrance_margin;
  return 0.05 * static_cast<double>(std::min(image_width, image_height));
}

void TrackerConfig::validate() const {
  if (particles < 1) throw ConfigError("particles must be >= 1");
  if (pso_iters < 1) throw ConfigError("pso_iters must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0,1)");
  if (!(phi_p > 1.0 && phi_p < 3.0)) throw ConfigError("phi_p must lie in (1,3)");
  if (!(phi_g > 1.0 && phi_g < 3.0)) throw ConfigError("phi_g must lie in (1,3)");

  for (auto [value, name] : {std::pair{lambda_p, "lambda_p"}, {lambda_d, "lambda_d"},
                             {lambda_h, "lambda_h"}, {lambda_s, "lambda_s"},
                             {lambda_m, "lambda_m"}, {sigma_h, "sigma_h"},
                             {sigma_p, "sigma_p"}, {sigma_i, "sigma_i"},
                             {xi_p, "xi_p"}, {xi_v, "xi_v"}, {rho_re, "rho_re"},
                             {discard_threshold, "discard_threshold"},
                             {social_step, "social_step"}}) {
    require_unit(value, name);
  }
  require_sum(lambda_p + lambda_d + lambda_h, "lambda_p + lambda_d + lambda_h");
  require_sum(lambda_s + lambda_m, "lambda_s + lambda_m");
  require_sum(xi_p + xi_v, "xi_p + xi_v");
  if (variant == Variant::PSO) {
    require_sum(sigma_h + sigma_p, "sigma_h + sigma_p");
  } else if (variant == Variant::PSOSocial) {
    require_sum(sigma_h + sigma_p + sigma_i, "sigma_h + sigma_p + sigma_i");
  }

  if (max_age < 1) throw ConfigError("max_age must be >= 1");
  if (!(gate_cost >= 0.0 && gate_cost <= 1.0)) throw ConfigError("gate_cost must lie in [0,1]");
  for (auto [value, name] : {std::pair{eps_x, "eps_x"}, {eps_v, "eps_v"},
                             {lambda_x, "lambda_x"}, {lambda_v, "lambda_v"}}) {
    if (!(value >= 0.0)) throw ConfigError(std::string(name) + " must be >= 0");
  }
  for (auto [value, name] : {std::pair{motion_pos_scale, "motion_pos_scale"},
                             {motion_vel_scale, "motion_vel_scale"},
                             {vmax_pos_scale, "vmax_pos_scale"},
                             {vmax_size_scale, "vmax_size_scale"}}) {
    if (!(value > 0.0)) throw ConfigError(std::string(name) + " must be > 0");
  }
  if (entrance_margin && !(*entrance_margin >= 0.0)) {
    throw ConfigError("entrance_margin must be >= 0");
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

}  // namespace gentrack
