#include "gentrack/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "gentrack/appearance.hpp"
#include "gentrack/error.hpp"
#include "gentrack/rng.hpp"

namespace gentrack::synth {

namespace {

constexpr double kMaxTextureSimilarity = 0.9;
constexpr int kMaxReseeds = 64;

struct Texture {
  // One oriented grating per box quadrant.
  std::array<double, 4> cos{};
  std::array<double, 4> sin{};
  std::array<double, 4> period{};
  std::array<double, 4> phase{};
};

Texture make_texture(std::uint64_t seed) {
  Rng rng(stream_seed(seed, 0x7e47));
  Texture t;
  for (int q = 0; q < 4; ++q) {
    const auto bin = static_cast<double>(rng.below(9));
    const double theta = std::numbers::pi * (bin + 0.5) / 9.0;
    t.cos[q] = std::cos(theta);
    t.sin[q] = std::sin(theta);
    t.period[q] = rng.uniform(6.0, 12.0);
    t.phase[q] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return t;
}

// Texture intensity at box-local coordinates (lx, ly).
std::uint8_t shade(const Texture& t, double lx, double ly, double w, double h) {
  const int q = (lx >= w / 2.0 ? 1 : 0) + (ly >= h / 2.0 ? 2 : 0);
  const double s = std::sin(2.0 * std::numbers::pi * (lx * t.cos[q] + ly * t.sin[q]) /
                                t.period[q] +
                            t.phase[q]);
  return static_cast<std::uint8_t>(std::lround(128.0 + 90.0 * s));
}

// Draws the unclamped box, pixels whose centers fall inside it.
void render(GrayImage& img, const BBox& box, const Texture& t) {
  const int x0 = std::max(0, static_cast<int>(std::ceil(box.left() - 0.5)));
  const int x1 = std::min(img.width(), static_cast<int>(std::ceil(box.right() - 0.5)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(box.top() - 0.5)));
  const int y1 = std::min(img.height(), static_cast<int>(std::ceil(box.bottom() - 0.5)));
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      img.at(x, y) = shade(t, x + 0.5 - box.left(), y + 0.5 - box.top(), box.w, box.h);
    }
  }
}

Point path_point(const std::vector<Point>& pts, double t) {
  if (pts.empty()) return {};
  if (pts.size() == 1) return pts.front();
  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    cumulative.push_back(cumulative.back() +
                         std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y));
  }
  const double target = std::clamp(t, 0.0, 1.0) * cumulative.back();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (target <= cumulative[i] || i + 1 == pts.size()) {
      const double seg = cumulative[i] - cumulative[i - 1];
      const double a = seg > 0.0 ? (target - cumulative[i - 1]) / seg : 0.0;
      return {pts[i - 1].x + a * (pts[i].x - pts[i - 1].x),
              pts[i - 1].y + a * (pts[i].y - pts[i - 1].y)};
    }
  }
  return pts.back();
}

BBox raw_box(const TargetSpec& target, int frame) {
  const int span = target.death - 1 - target.birth;
  const double t = span > 0 ? static_cast<double>(frame - target.birth) / span : 0.0;
  const Point c = path_point(target.waypoints, t);
  return {c.x, c.y, target.w, target.h};
}

bool alive(const TargetSpec& t, int frame) { return frame >= t.birth && frame < t.death; }

bool hidden(const TargetSpec& t, int frame) {
  return std::any_of(t.hidden.begin(), t.hidden.end(),
                     [frame](const auto& r) { return frame >= r.first && frame < r.second; });
}

FeatureVector texture_features(const TargetSpec& target) {
  const int w = std::max(2, static_cast<int>(std::lround(target.w)));
  const int h = std::max(2, static_cast<int>(std::lround(target.h)));
  GrayImage patch(w, h);
  render(patch, BBox::from_corner(0, 0, w, h), make_texture(target.texture_seed));
  return extract_features(patch, BBox::from_corner(0, 0, w, h));
}

// Re-seeds textures until every pair is below the similarity limit.
void separate_textures(Scenario& s) {
  std::vector<FeatureVector> feats;
  for (auto& target : s.targets) {
    for (int attempt = 0;; ++attempt) {
      auto f = texture_features(target);
      const bool distinct = std::all_of(feats.begin(), feats.end(), [&](const auto& other) {
        return cosine_similarity(f, other) < kMaxTextureSimilarity;
      });
      if (distinct || attempt >= kMaxReseeds) {
        feats.push_back(std::move(f));
        break;
      }
      target.texture_seed = mix64(target.texture_seed + 1);
    }
  }
}

}  // namespace

BBox target_box(const Scenario& scenario, const TargetSpec& target, int frame) {
  return clamp_to_image(raw_box(target, frame), scenario.width, scenario.height);
}

double max_texture_similarity(const Scenario& scenario) {
  std::vector<FeatureVector> feats;
  for (const auto& t : scenario.targets) feats.push_back(texture_features(t));
  double worst = 0.0;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    for (std::size_t j = i + 1; j < feats.size(); ++j) {
      worst = std::max(worst, cosine_similarity(feats[i], feats[j]));
    }
  }
  return worst;
}

Generated generate(Scenario scenario) {
  separate_textures(scenario);
  std::vector<Texture> textures;
  for (const auto& t : scenario.targets) textures.push_back(make_texture(t.texture_seed));

  Generated out;
  out.frames.reserve(static_cast<std::size_t>(scenario.duration));
  out.detections.resize(static_cast<std::size_t>(scenario.duration));
  Rng noise(stream_seed(scenario.seed, 1));
  const auto& nm = scenario.noise;

  for (int f = 0; f < scenario.duration; ++f) {
    GrayImage img(scenario.width, scenario.height, scenario.background);
    for (std::size_t k = 0; k < scenario.targets.size(); ++k) {
      const auto& target = scenario.targets[k];
      if (!alive(target, f)) continue;
      render(img, raw_box(target, f), textures[k]);
      out.ground_truth[f].push_back(
          {static_cast<long>(k), target_box(scenario, target, f), 1.0});
    }
    for (const auto& occ : scenario.occluders) {
      img.fill_rect(static_cast<int>(std::lround(occ.box.left())),
                    static_cast<int>(std::lround(occ.box.top())),
                    static_cast<int>(std::lround(occ.box.right())),
                    static_cast<int>(std::lround(occ.box.bottom())), occ.intensity);
    }
    out.frames.push_back(std::move(img));

    auto& dets = out.detections[static_cast<std::size_t>(f)];
    for (const auto& target : scenario.targets) {
      if (!alive(target, f) || hidden(target, f)) continue;
      if (nm.dropout > 0.0 && noise.bernoulli(nm.dropout)) continue;
      const BBox truth = target_box(scenario, target, f);
      const std::array<double, 4> jitter{nm.center_jitter * noise.normal(),
                                         nm.center_jitter * noise.normal(),
                                         nm.size_jitter * noise.normal(),
                                         nm.size_jitter * noise.normal()};
      BBox b{truth.u + jitter[0], truth.v + jitter[1], std::max(2.0, truth.w + jitter[2]),
             std::max(2.0, truth.h + jitter[3])};
      b = clamp_to_image(b, scenario.width, scenario.height);
      const double magnitude = std::sqrt(jitter[0] * jitter[0] + jitter[1] * jitter[1] +
                                         jitter[2] * jitter[2] + jitter[3] * jitter[3]);
      const double conf = std::clamp(1.0 - magnitude / diagonal(truth), nm.min_conf, 1.0);
      dets.push_back({b, conf, std::nullopt});
    }
    if (nm.false_positive_rate > 0.0 && !scenario.targets.empty()) {
      const double whole = std::floor(nm.false_positive_rate);
      int count = static_cast<int>(whole);
      if (noise.bernoulli(nm.false_positive_rate - whole)) ++count;
      for (int i = 0; i < count; ++i) {
        const auto& like = scenario.targets[noise.below(scenario.targets.size())];
        BBox b{noise.uniform(0.0, scenario.width), noise.uniform(0.0, scenario.height),
               like.w, like.h};
        b = clamp_to_image(b, scenario.width, scenario.height);
        dets.push_back({b, noise.uniform(nm.fp_conf_min, nm.fp_conf_max), std::nullopt});
      }
    }
  }
  return out;
}

namespace {

Scenario crossing(std::uint64_t seed) {
  Scenario s;
  s.width = 640;
  s.height = 480;
  s.duration = 60;
  s.seed = seed;
  // Diagonal paths forming an X through the image center. The second target
  // reaches the intersection a few frames after the first.
  TargetSpec a;
  a.birth = 0;
  a.death = 60;
  a.waypoints = {{80, 120}, {560, 360}};
  a.w = 40;
  a.h = 90;
  a.texture_seed = mix64(seed ^ 0xa);
  TargetSpec b;
  b.birth = 0;
  b.death = 60;
  b.waypoints = {{600, 100}, {120, 340}};
  b.w = 50;
  b.h = 100;
  b.texture_seed = mix64(seed ^ 0xb);
  s.targets = {a, b};
  return s;
}

Scenario occlusion5(std::uint64_t seed) {
  Scenario s;
  s.width = 640;
  s.height = 480;
  s.duration = 60;
  s.seed = seed;
  s.noise.center_jitter = 0.5;
  s.noise.size_jitter = 0.5;

  // 8 px/frame along y = 240; behind the occluder spanning x in [280, 358]
  // exactly in frames 30..34.
  TargetSpec hidden_target;
  hidden_target.birth = 0;
  hidden_target.death = 60;
  hidden_target.waypoints = {{60, 240}, {60 + 8.0 * 59, 240}};
  hidden_target.w = 40;
  hidden_target.h = 90;
  hidden_target.texture_seed = mix64(seed ^ 0x1);
  hidden_target.hidden = {{30, 35}};

  TargetSpec upper;
  upper.birth = 0;
  upper.death = 60;
  upper.waypoints = {{580, 90}, {100, 110}};
  upper.w = 36;
  upper.h = 80;
  upper.texture_seed = mix64(seed ^ 0x2);

  TargetSpec lower;
  lower.birth = 5;
  lower.death = 60;
  lower.waypoints = {{120, 400}, {420, 390}};
  lower.w = 44;
  lower.h = 84;
  lower.texture_seed = mix64(seed ^ 0x3);

  s.targets = {hidden_target, upper, lower};
  s.occluders = {{BBox::from_corner(280, 170, 78, 140), 60}};
  return s;
}

Scenario churn10(std::uint64_t seed) {
  Scenario s;
  s.width = 640;
  s.height = 480;
  s.duration = 240;
  s.seed = seed;
  s.noise.center_jitter = 1.0;
  s.noise.size_jitter = 1.0;
  s.noise.dropout = 0.1;

  constexpr std::array<double, 5> lanes{60, 150, 240, 330, 420};
  for (int k = 0; k < 10; ++k) {
    const int lane = k % 5;
    const int group = k / 5;
    TargetSpec t;
    t.w = 30.0 + 2.0 * k;
    t.h = 60.0 + 2.0 * k;
    const double speed = 4.0 + 0.5 * lane;
    const bool rightward = lane % 2 == 0;
    const double x_lo = t.w / 2.0;
    const double x_hi = s.width - t.w / 2.0;
    const double y = lanes[static_cast<std::size_t>(lane)];
    const double wobble = (lane % 2 == 0 ? 14.0 : -14.0);
    const Point start{rightward ? x_lo : x_hi, y};
    const Point end{rightward ? x_hi : x_lo, y};
    t.waypoints = {start, {(start.x + end.x) / 2.0, y + wobble}, end};
    double length = 0.0;
    for (std::size_t i = 1; i < t.waypoints.size(); ++i) {
      length += std::hypot(t.waypoints[i].x - t.waypoints[i - 1].x,
                           t.waypoints[i].y - t.waypoints[i - 1].y);
    }
    t.birth = group * 100 + lane * 8;
    t.death = t.birth + static_cast<int>(std::ceil(length / speed)) + 1;
    if (t.death > s.duration) {
      // Still walking at the end: cut the path where the sequence ends.
      const double frac = static_cast<double>(s.duration - 1 - t.birth) / (t.death - 1 - t.birth);
      std::vector<Point> cut;
      double run = 0.0;
      const double keep = frac * length;
      cut.push_back(t.waypoints.front());
      for (std::size_t i = 1; i < t.waypoints.size(); ++i) {
        const auto& p0 = t.waypoints[i - 1];
        const auto& p1 = t.waypoints[i];
        const double seg = std::hypot(p1.x - p0.x, p1.y - p0.y);
        if (run + seg >= keep) {
          const double a = (keep - run) / seg;
          cut.push_back({p0.x + a * (p1.x - p0.x), p0.y + a * (p1.y - p0.y)});
          break;
        }
        cut.push_back(p1);
        run += seg;
      }
      t.waypoints = cut;
      t.death = s.duration;
    }
    t.texture_seed = mix64(seed ^ (0x100 + static_cast<std::uint64_t>(k)));
    s.targets.push_back(t);
  }
  return s;
}

}  // namespace

Scenario preset(std::string_view name, std::uint64_t seed) {
  if (name == "crossing") return crossing(seed);
  if (name == "occlusion5") return occlusion5(seed);
  if (name == "churn10") return churn10(seed);
  throw Error("unknown preset '" + std::string(name) + "'");
}

}  // namespace gentrack::synth
