#ifndef MFT_EQUILIBRIUM_HET_HPP_
#define MFT_EQUILIBRIUM_HET_HPP_

#include <vector>

#include "mft/reward.hpp"

namespace mft {

// Finite mixture of player types sharing one volatility.
struct PopulationMix {
  struct Atom {
    double x0;
    double c;
    double weight;
  };
  std::vector<Atom> atoms;
  double sigma = 0.25;

  void validate() const;
};

// Equilibrium of the heterogeneous game under a step reward, found by
// solving the rank-quantile fixed-point system.
struct HetEquilibrium {
  PopulationMix mix;
  RankRewardStep reward;
  double horizon = 0.0;  // may be +inf

  std::vector<double> quantiles;  // absolute times of ranks r_1..r_k0
  int k0 = 0;                     // later rank thresholds are never reached
  bool all_unfinished = false;    // deadline too tight for the first rank

  std::vector<double> type_beta;   // per-type completion probability
  std::vector<double> type_value;
  double beta = 0.0;      // aggregate completion rate
  double welfare = 0.0;   // weight-averaged value
  double max_residual = 0.0;
};

// Probability that the first rank threshold is reachable at all: the
// completion mass when everyone responds to an empty field.
double compute_A_T(const PopulationMix& mix, const RankRewardStep& reward,
                   double T);

HetEquilibrium solve_het(const PopulationMix& mix,
                         const RankRewardStep& reward, double T);

// Feedback effort of type i at (t, x) against the equilibrium quantiles.
double het_effort_field(const HetEquilibrium& eq, int type, double t,
                        double x);

}  // namespace mft

#endif  // MFT_EQUILIBRIUM_HET_HPP_
