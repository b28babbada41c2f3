#include <stdexcept>
#include <cmath>

#include <doctest.h>

#include "mft/equilibrium_hom.hpp"
#include "mft/nplayer_sim.hpp"
#include "mft/serialize.hpp"

using namespace mft;

namespace {

HomEquilibrium contest_eq(double T = 1.0) {
  return solve_hom(ModelParams{1.0, 0.25, 1.0, T, 0.0},
                   make_smooth_reward(
                       [](double r) { return 6.0 * (1.0 - r) * (1.0 - r); },
                       2000, 0.0));
}

}  // namespace

TEST_CASE("same seed gives byte-identical reports") {
  auto eq = contest_eq();
  SimConfig cfg;
  cfg.N = 64;
  cfg.dt = 2e-3;
  cfg.seed = 123;
  cfg.replications = 2;
  cfg.deviations = {{DeviationStrategy::Kind::Scale, 0.9}};
  auto a = simulate_nplayer(eq, cfg);
  auto b = simulate_nplayer(eq, cfg);
  CHECK(to_json(a).dump() == to_json(b).dump());
  auto c = simulate_nplayer(eq, SimConfig{cfg.N, cfg.dt, 124, cfg.replications,
                                          cfg.bridge_absorption, cfg.deviations});
  CHECK(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("zero-reward game reproduces the uncontrolled passage law") {
  // flat reward -> zero equilibrium effort -> completions are plain
  // Brownian first passages
  ModelParams p{0.5, 0.25, 1.0, 1.0, 0.0};
  auto eq = solve_hom(p, RankReward(RankRewardStep{{}, {0.0}, 0.0}));
  SimConfig cfg;
  cfg.N = 4096;
  cfg.dt = 1e-3;
  cfg.seed = 5;
  cfg.replications = 8;
  auto rep = simulate_nplayer(eq, cfg);
  const double F = fpt_cdf(FptLaw(p.scaled_distance()), p.horizon);
  const double se =
      std::sqrt(F * (1.0 - F) / (double(cfg.N) * cfg.replications));
  CHECK(std::abs(rep.beta_hat - F) < 3.0 * se);
}

TEST_CASE("equilibrium play approaches mean-field rate and value") {
  auto eq = contest_eq();
  SimConfig cfg;
  cfg.N = 1024;
  cfg.dt = 1e-3;
  cfg.seed = 17;
  cfg.replications = 4;
  auto rep = simulate_nplayer(eq, cfg);
  CHECK(std::abs(rep.beta_hat - eq.beta()) < 0.02);
  CHECK(std::abs(rep.mean_payoff - eq.value()) < 0.04);
  CHECK(!rep.completion_times.empty());
  CHECK(rep.completion_times.back() <= 1.0);
}

TEST_CASE("unit-scale deviation has exactly zero gain") {
  // common random numbers: scaling the effort rule by 1 replays the
  // identical path, so the paired estimator is exactly zero
  auto eq = contest_eq();
  SimConfig cfg;
  cfg.N = 32;
  cfg.dt = 2e-3;
  cfg.seed = 3;
  cfg.replications = 2;
  cfg.deviations = {{DeviationStrategy::Kind::Scale, 1.0}};
  auto rep = simulate_nplayer(eq, cfg);
  CHECK(rep.deviation_gains[0].gain == 0.0);
  CHECK(rep.deviation_gains[0].se == 0.0);
}

TEST_CASE("gross over-effort loses money") {
  auto eq = contest_eq();
  SimConfig cfg;
  cfg.N = 256;
  cfg.dt = 1e-3;
  cfg.seed = 9;
  cfg.replications = 4;
  cfg.deviations = {{DeviationStrategy::Kind::Scale, 2.0},
                    {DeviationStrategy::Kind::Constant, 3.0}};
  auto rep = simulate_nplayer(eq, cfg);
  for (const auto& g : rep.deviation_gains) CHECK(g.gain < 0.0);
}

TEST_CASE("heterogeneous simulation assigns types by weight") {
  RankRewardStep reward = discretize(
      (make_smooth_reward(
          [](double r) { return 15.0 * (1.0 - r) * (1.0 - r); }, 4000, 0.0)),
      50);
  PopulationMix mix;
  mix.sigma = 0.25;
  mix.atoms = {{1.0, 1.0, 0.8}, {2.0, 1.0, 0.2}};
  auto eq = solve_het(mix, reward, 1.0);
  SimConfig cfg;
  cfg.N = 512;
  cfg.dt = 1e-3;
  cfg.seed = 21;
  cfg.replications = 2;
  auto rep = simulate_nplayer(eq, cfg);
  // far-start players essentially never finish, capping the rate near the
  // advantaged share
  CHECK(rep.beta_hat < 0.85);
  CHECK(std::abs(rep.beta_hat - eq.beta) < 0.03);
}

TEST_CASE("configuration validation") {
  auto eq = contest_eq();
  SimConfig cfg;
  cfg.N = 1;
  CHECK_THROWS_AS(simulate_nplayer(eq, cfg), std::invalid_argument);
  cfg.N = 16;
  cfg.dt = 0.5;  // first Euler step would overshoot
  CHECK_THROWS_AS(simulate_nplayer(eq, cfg), std::invalid_argument);
}
