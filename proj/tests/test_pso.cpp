#include <gtest/gtest.h>

#include "gentrack/motion.hpp"
#include "gentrack/pso.hpp"
#include "pso_fixture.hpp"

using gentrack::BBox;
using gentrack::InitMode;
using gentrack::Particle;
using gentrack::ResampleMode;

TEST(InitSwarm, NoNoiseSingleParticleAdvancesByVelocity) {
  gentrack::Track t;
  t.state = {100, 100, 20, 40};
  t.vel = {4, -2, 0, 0};
  gentrack::MotionParams p;
  p.eps_x = 0;
  p.eps_v = 0;
  gentrack::Rng rng(1);
  const auto s = gentrack::init_swarm(t, 1, gentrack::bounds_for(t.state, p), p, InitMode::FromOptimum, rng);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].state, (BBox{104, 98, 20, 40}));
}

TEST(InitSwarm, Reproducible) {
  gentrack::Track t;
  t.state = {100, 100, 20, 40};
  auto draw = [&] {
    gentrack::Rng rng(77);
    return gentrack::init_swarm(t, 6, gentrack::bounds_for(t.state), {}, InitMode::FromOptimum, rng);
  };
  const auto a = draw();
  const auto b = draw();
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].state, b[i].state);
    EXPECT_EQ(a[i].vel, b[i].vel);
  }
}

TEST(InitSwarm, WithinBoundsOfPrediction) {
  gentrack::Track t;
  t.state = {300, 300, 40, 80};
  t.vel = {3, 1, 0, 0};
  const auto bounds = gentrack::bounds_for(t.state);
  gentrack::Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    for (const auto& p : gentrack::init_swarm(t, 6, bounds, {}, InitMode::FromOptimum, rng)) {
      for (int i = 0; i < 4; ++i) {
        const double vel_reach = std::min(std::abs(t.vel[i]) + bounds.uv_max[i], bounds.v_max[i]);
        EXPECT_LE(std::abs(p.state[i] - t.state[i]), vel_reach + bounds.ux_max[i] + 1e-9);
      }
    }
  }
}

TEST(RunPso, IdenticalParticlesStayPut) {
  auto land = testing_support::landscape(5, 0.0, 0.0);
  gentrack::Track t = land.track;
  Particle p;
  p.state = t.state;
  p.origin = t.state;
  p.pbest_state = t.state;
  t.particles.assign(4, p);
  auto cfg = gentrack::TrackerConfig::defaults(gentrack::Variant::PSO);
  gentrack::Rng rng(1);
  const auto r = gentrack::run_pso(t, land.image, {}, cfg, rng);
  EXPECT_EQ(r.gbest_state, t.state);
  for (double f : r.gbest_trace) EXPECT_DOUBLE_EQ(f, r.gbest_trace.front());
}

TEST(RunPso, GbestTraceNonDecreasing) {
  for (int seed = 0; seed < 20; ++seed) {
    auto land = testing_support::landscape(static_cast<std::uint64_t>(seed), 12.0, -8.0);
    auto cfg = gentrack::TrackerConfig::defaults(gentrack::Variant::PSO);
    gentrack::Rng rng(static_cast<std::uint64_t>(seed));
    land.track.particles = gentrack::init_swarm(land.track, cfg.particles,
                                                gentrack::bounds_for(land.track.state), {},
                                                InitMode::FromOptimum, rng);
    const auto r = gentrack::run_pso(land.track, land.image, {}, cfg, rng);
    ASSERT_EQ(r.gbest_trace.size(), static_cast<std::size_t>(cfg.pso_iters));
    for (std::size_t i = 1; i < r.gbest_trace.size(); ++i) {
      EXPECT_GE(r.gbest_trace[i], r.gbest_trace[i - 1]);
    }
    EXPECT_DOUBLE_EQ(r.gbest_trace.back(), r.gbest_fitness);
  }
}

namespace {

std::vector<Particle> with_fitness(std::initializer_list<double> f) {
  std::vector<Particle> out;
  double x = 0.0;
  for (double v : f) {
    Particle p;
    p.state = {x, 0, 1, 1};
    p.fitness = v;
    p.pbest_fitness = v;
    out.push_back(p);
    x += 1.0;
  }
  return out;
}

}  // namespace

TEST(Resample, AllAboveThresholdUnchanged) {
  const auto ps = with_fitness({0.5, 0.6, 0.9});
  for (auto mode : {ResampleMode::Discard, ResampleMode::ReplaceWithGlobal, ResampleMode::None}) {
    const auto out = gentrack::resample(ps, {9, 9, 1, 1}, 0.9, mode, 0.2);
    ASSERT_EQ(out.size(), ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_EQ(out[i].state, ps[i].state);
  }
}

TEST(Resample, DiscardKeepsBestWhenAllLow) {
  const auto out = gentrack::resample(with_fitness({0.1, 0.15, 0.05}), {}, 0.15,
                                      ResampleMode::Discard, 0.2);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0].fitness, 0.15);
}

TEST(Resample, DiscardDropsLowOnes) {
  const auto out = gentrack::resample(with_fitness({0.1, 0.5, 0.05, 0.7}), {}, 0.7,
                                      ResampleMode::Discard, 0.2);
  EXPECT_EQ(out.size(), 2u);
}

TEST(Resample, ReplaceKeepsSizeAndLiftsFitness) {
  const BBox g{9, 9, 1, 1};
  const auto out = gentrack::resample(with_fitness({0.1, 0.5, 0.05}), g, 0.5,
                                      ResampleMode::ReplaceWithGlobal, 0.2);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].state, g);
  EXPECT_EQ(out[2].state, g);
  for (const auto& p : out) EXPECT_GE(p.fitness, 0.2);
}

TEST(RunPso, MovesTowardDisplacedPatch) {
  double before = 0.0, after = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    auto land = testing_support::landscape(static_cast<std::uint64_t>(seed), 16.0, 12.0);
    const auto cfg = gentrack::TrackerConfig::defaults(gentrack::Variant::PSO);
    gentrack::Rng rng(static_cast<std::uint64_t>(seed) + 100);
    land.track.particles = gentrack::init_swarm(land.track, cfg.particles,
                                                gentrack::bounds_for(land.track.state),
                                                gentrack::MotionParams::from(cfg),
                                                InitMode::FromOptimum, rng);
    const auto r = gentrack::run_pso(land.track, land.image, {}, cfg, rng);
    before += gentrack::center_distance(land.track.state, land.patch);
    after += gentrack::center_distance(r.gbest_state, land.patch);
  }
  EXPECT_LT(after, 0.5 * before);
}
