#ifndef MFT_NPLAYER_SIM_HPP_
#define MFT_NPLAYER_SIM_HPP_

#include <cstdint>
#include <vector>

#include "mft/equilibrium_het.hpp"
#include "mft/equilibrium_hom.hpp"

namespace mft {

struct DeviationStrategy {
  enum class Kind { Scale, Zero, Constant };
  Kind kind = Kind::Scale;
  double param = 1.0;  // scale factor or constant effort rate
};

struct SimConfig {
  int N = 1024;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  int replications = 8;
  bool bridge_absorption = true;  // kill the sqrt(dt) first-passage bias
  std::vector<DeviationStrategy> deviations;

  void validate() const;
};

struct GainEstimate {
  DeviationStrategy deviation;
  double gain = 0.0;  // mean of J_deviate - J_equilibrium
  double se = 0.0;    // batch-mean standard error over replications
};

struct SimReport {
  int N = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  int replications = 0;
  double beta_hat = 0.0;  // empirical completion rate
  double beta_se = 0.0;
  double mean_payoff = 0.0;
  double payoff_se = 0.0;
  std::vector<GainEstimate> deviation_gains;
  std::vector<double> completion_times;  // sorted, finished players, last rep
};

// Finite-player tournament under the mean-field feedback strategy:
// Euler-Maruyama with Brownian-bridge absorption, rewards read from the
// empirical rank, per-(replication, player) RNG streams.  Deviation gains
// use common random numbers: only the deviating player is re-simulated.
SimReport simulate_nplayer(const HomEquilibrium& eq, const SimConfig& cfg);
SimReport simulate_nplayer(const HetEquilibrium& eq, const SimConfig& cfg);

// Gain of one tested deviation, with its confidence half-width ingredients.
GainEstimate estimate_deviation_gain(const HomEquilibrium& eq,
                                     const SimConfig& cfg,
                                     const DeviationStrategy& dev);

// Number of worker threads: hardware concurrency capped by MFT_THREADS.
int max_threads();

}  // namespace mft

#endif  // MFT_NPLAYER_SIM_HPP_
