// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gentrack/association.hpp"
#include "gentrack/eval.hpp"
#include "gentrack/fitness.hpp"
#include "gentrack/io.hpp"
#include "gentrack/lifecycle.hpp"
#include "gentrack/pso.hpp"
#include "gentrack/rng.hpp"
#include "gentrack/synth.hpp"
#include "gentrack/tracker.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"
#include "pso_fixture.hpp"
#include "swap_fixture.hpp"

using namespace gentrack;
using testing_support::run_preset;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome hungarian_oracle() {
  const auto t0 = Clock::now();
  Rng rng(2024);
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    CostMatrix m(5, 5);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c) m(r, c) = rng.uniform();
    const auto cols = min_cost_assignment(m);
    double total = 0.0;
    for (std::size_t r = 0; r < 5; ++r) total += m(r, static_cast<std::size_t>(cols[r]));
    // Same rows summed in the same order by the oracle, so exact equality holds.
    if (total != oracle::brute_force_min_cost(m)) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 5.0, fmt("mismatches=%.0f time=%.3fs", mismatches, secs)};
}

Outcome iou_oracle() {
  const auto t0 = Clock::now();
  Rng rng(77);
  auto rand_box = [&] {
    const double l = std::floor(rng.uniform(0, 40));
    const double t = std::floor(rng.uniform(0, 40));
    const double w = 1 + std::floor(rng.uniform(0, 30));
    const double h = 1 + std::floor(rng.uniform(0, 30));
    return BBox::from_corner(l, t, w, h);
  };
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const BBox a = rand_box();
    const BBox b = rand_box();
    worst = std::max(worst, std::abs(iou(a, b) - oracle::grid_iou(a, b, 1)));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 10.0, fmt("max_err=%.3g time=%.3fs", worst, secs)};
}

Outcome range_suite() {
  Rng rng(9);
  int bad = 0;
  auto check = [&](double x) { bad += !(x >= 0.0 && x <= 1.0); };
  auto rand_box = [&] {
    return BBox{rng.uniform(-50, 700), rng.uniform(-50, 500), rng.uniform(1, 200),
                rng.uniform(1, 200)};
  };
  auto rand_feat = [&] {
    FeatureVector f;
    f.values.resize(hog::kLength);
    const bool zero = rng.bernoulli(0.02);
    for (auto& v : f.values) v = zero ? 0.0f : static_cast<float>(rng.uniform());
    return f;
  };
  auto rand_vel = [&] {
    return Velocity4{rng.symmetric(30), rng.symmetric(30), rng.symmetric(5), rng.symmetric(5)};
  };
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const double ls = rng.uniform();
    check(pair_fitness(rand_box(), rand_feat(), rand_box(), rand_feat(), ls, 1.0 - ls));
  }
  for (int k = 0; k < n; ++k) {
    std::vector<Neighbor> nb(static_cast<std::size_t>(rng.uniform(0, 6)));
    for (auto& x : nb) x = {rand_box(), rand_vel()};
    const double xp = rng.uniform();
    check(social_fitness(rand_box(), rand_vel(), nb, rng.uniform(1, 300), rng.uniform(0.5, 50),
                         xp, 1.0 - xp));
  }
  for (int k = 0; k < n; ++k) {
    FitnessWeights w;
    w.social = rng.bernoulli(0.5);
    const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
    const double s = a + b + (w.social ? c : 0.0);
    w.sigma_h = a / s;
    w.sigma_p = b / s;
    w.sigma_i = w.social ? c / s : 0.0;
    check(compose(rng.uniform(), rng.uniform(), rng.uniform(), w));
  }
  for (int k = 0; k < n; ++k) check(motion_cost(rand_box(), rand_box()));
  for (int k = 0; k < n; ++k) {
    std::vector<Track> tracks(1 + static_cast<std::size_t>(rng.uniform(0, 3)));
    for (auto& t : tracks) {
      t.state = rand_box();
      t.penalty = rng.uniform();
      t.particles.resize(1 + static_cast<std::size_t>(rng.uniform(0, 4)));
      for (auto& p : t.particles) p.state = rand_box();
    }
    std::vector<Detection> dets(1 + static_cast<std::size_t>(rng.uniform(0, 3)));
    for (auto& d : dets) d = {rand_box(), rng.uniform(), {}};
    const auto m = cost_matrix(tracks, dets, TrackerConfig::defaults(Variant::PSOSocial));
    for (double x : m.data()) check(x);
  }
  const double lone = social_fitness({100, 100, 20, 40}, {}, {}, 45.0, 10.0);
  const bool ok = bad == 0 && lone == 1.0;
  return {ok, fmt("out_of_range=%.0f social(N=0)=%.3f", bad, lone)};
}

Outcome pso_monotonicity() {
  int non_monotone = 0;
  int closer = 0;
  for (int run = 0; run < 100; ++run) {
    Rng offset_rng(stream_seed(500, static_cast<std::uint64_t>(run)));
    // Prior state 20 px from the patch in a random direction.
    const double angle = offset_rng.uniform(0.0, 2.0 * std::numbers::pi);
    auto land = testing_support::landscape(static_cast<std::uint64_t>(run),
                                           20.0 * std::cos(angle), 20.0 * std::sin(angle));
    const auto cfg = TrackerConfig::defaults(Variant::PSO);
    Rng rng(static_cast<std::uint64_t>(run) + 1);
    land.track.particles = init_swarm(land.track, cfg.particles, bounds_for(land.track.state), MotionParams::from(cfg),
                                      InitMode::FromOptimum, rng);
    double mu = 0.0, mv = 0.0;
    for (const auto& p : land.track.particles) {
      mu += p.state.u;
      mv += p.state.v;
    }
    mu /= static_cast<double>(land.track.particles.size());
    mv /= static_cast<double>(land.track.particles.size());
    const auto r = run_pso(land.track, land.image, {}, cfg, rng);
    for (std::size_t i = 1; i < r.gbest_trace.size(); ++i) {
      if (r.gbest_trace[i] < r.gbest_trace[i - 1]) {
        ++non_monotone;
        break;
      }
    }
    const double before = std::hypot(mu - land.patch.u, mv - land.patch.v);
    const double after = center_distance(r.gbest_state, land.patch);
    closer += after < before;
  }
  return {non_monotone == 0 && closer >= 95,
          fmt("non_monotone=%.0f closer=%.0f/100", non_monotone, closer)};
}

Outcome lifecycle_arithmetic() {
  bool ok = true;
  std::string why;
  auto fail = [&](const std::string& s) {
    ok = false;
    if (why.empty()) why = s;
  };
  Track base;
  base.id = 1;
  base.state = {300, 200, 30, 60};
  base.last_seen = base.state;
  base.status = TrackStatus::Weak;

  const auto basic = TrackerConfig::defaults(Variant::Basic);
  Track t = base;
  for (int k = 1; k <= 20; ++k) {
    const double before = t.penalty;
    update_weak_basic(t, basic);
    if (std::abs((t.penalty - before) - TrackerConfig::rho_max / basic.max_age) > 1e-12)
      fail("basic penalty step");
  }

  auto pso = TrackerConfig::defaults(Variant::PSO);
  pso.rho_re = 0.5;
  Track w = base;
  w.penalty = 0.5;
  w.age = 10;
  SwarmResult s;
  s.gbest_state = w.state;
  s.gbest_fitness = 1.0;
  s.gbest_history_fitness = 1.0;
  update_weak_pso(w, s, pso);
  if (std::abs(w.penalty - (0.5 - 1.0 / pso.max_age)) > 1e-12) fail("pso penalty decrement");
  if (w.age != 9) fail("pso age decrement");

  std::vector<Track> pool{base};
  pool[0].age = basic.max_age - 1;
  if (prune(pool, basic).size() != 1) fail("pruned below max age");
  pool[0].age = basic.max_age;
  if (!prune(pool, basic).empty()) fail("kept at max age");
  return {ok, ok ? "basic step, pso recovery, pruning exact" : why};
}

Outcome crossing() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (auto v : {Variant::Basic, Variant::PSO, Variant::PSOSocial}) {
    const auto r = run_preset("crossing", 1, v).report;
    ok = ok && r.idsw == 0 && r.mota == 100.0;
    detail += std::string(to_string(v)) + fmt(":MOTA=%.2f,IDSW=%.0f ", r.mota, r.idsw);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 5.0, detail + fmt("time=%.2fs", secs)};
}

Outcome occlusion5() {
  const auto t0 = Clock::now();
  int social_ok = 0;
  long social_idsw = 0;
  long basic_worst = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = run_preset("occlusion5", seed, Variant::PSOSocial);
    social_idsw += r.report.idsw;
    // Target 0 is hidden in frames 30-34.
    const long before = testing_support::covering_id(r, 29, 0);
    const long after = testing_support::covering_id(r, 36, 0);
    if (r.report.idsw == 0 && before >= 0 && before == after) ++social_ok;
    basic_worst = std::max(basic_worst, run_preset("occlusion5", seed, Variant::Basic).report.idsw);
  }
  const double secs = seconds_since(t0);
  return {social_ok >= 9 && basic_worst <= 1 && secs < 30.0,
          fmt("social_recovered=%.0f/10 social_idsw=%.0f basic_max_idsw=%.0f time=%.2fs",
              social_ok, social_idsw, basic_worst, secs)};
}

Outcome churn10() {
  const auto t0 = Clock::now();
  bool ok = true;
  double min_mota = 1e9, min_idf1 = 1e9;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = run_preset("churn10", seed, Variant::PSOSocial).report;
    ok = ok && r.mota >= 95.0 && r.idf1 >= 90.0;
    min_mota = std::min(min_mota, r.mota);
    min_idf1 = std::min(min_idf1, r.idf1);
  }
  return {ok, fmt("min_MOTA=%.2f min_IDF1=%.2f time=%.2fs", min_mota, min_idf1,
                  seconds_since(t0))};
}

Outcome determinism() {
  const auto frames =
      testing_support::as_inputs(synth::generate(synth::preset("churn10", 3)));
  auto text = [&](int threads) {
    auto cfg = TrackerConfig::defaults(Variant::PSOSocial);
    cfg.seed = 11;
    cfg.threads = threads;
    std::ostringstream out;
    io::write_results(out, run_sequence(cfg, frames));
    return out.str();
  };
  const auto a = text(1);
  const auto b = text(1);
  const auto c = text(4);
  const bool ok = !a.empty() && a == b && a == c;
  return {ok, fmt("bytes=%.0f repeat_equal=%.0f threads4_equal=%.0f",
                  static_cast<double>(a.size()), a == b, a == c)};
}

Outcome latency() {
  synth::Scenario s;
  s.width = 640;
  s.height = 640;
  s.duration = 40;
  s.seed = 5;
  for (int k = 0; k < 10; ++k) {
    synth::TargetSpec t;
    t.birth = 0;
    t.death = s.duration;
    const double y = 40.0 + 60.0 * k;
    t.waypoints = {{60.0 + 20 * k, y}, {380.0 + 20 * k, y}};
    t.w = 40;
    t.h = 50;
    t.texture_seed = static_cast<std::uint64_t>(k + 1);
    s.targets.push_back(t);
  }
  s.noise.center_jitter = 1.0;
  const auto frames = testing_support::as_inputs(synth::generate(s));
  auto cfg = TrackerConfig::defaults(Variant::Basic);
  cfg.particles = 8;
  Tracker tracker(cfg);
  std::vector<double> ms;
  std::size_t live = 0;
  for (const auto& f : frames) {
    const auto t0 = Clock::now();
    const auto out = tracker.step(f);
    ms.push_back(seconds_since(t0) * 1e3);
    live = out.size();
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  return {median < 25.0 && live == 10,
          fmt("median=%.3fms live_tracks=%.0f", median, static_cast<double>(live))};
}

Outcome metric_fixed_point() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"crossing", "occlusion5", "churn10"}) {
    const auto gt = synth::generate(synth::preset(name, 1)).ground_truth;
    const auto r = evaluate(gt, gt);
    ok = ok && r.mota == 100.0 && r.idf1 == 100.0 && r.idsw == 0;
  }
  const auto swap = evaluate(testing_support::two_walkers_truth(),
                             testing_support::swapped_at_frame_six());
  ok = ok && swap.idsw == 2 && std::abs(swap.idf1 - 50.0) < 1e-9;
  detail = fmt("presets fixed, swap IDSW=%.0f IDF1=%.2f", swap.idsw, swap.idf1);
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"hungarian_oracle", hungarian_oracle},
      {"iou_oracle", iou_oracle},
      {"fitness_cost_range", range_suite},
      {"pso_monotonicity", pso_monotonicity},
      {"lifecycle_arithmetic", lifecycle_arithmetic},
      {"e2e_crossing", crossing},
      {"e2e_occlusion5", occlusion5},
      {"e2e_churn10", churn10},
      {"determinism", determinism},
      {"latency_basic", latency},
      {"metric_fixed_point", metric_fixed_point},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d %-22s %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
