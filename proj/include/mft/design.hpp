#ifndef MFT_DESIGN_HPP_
#define MFT_DESIGN_HPP_

#include <optional>
#include <vector>

#include "mft/reward.hpp"

namespace mft {

// Completion-time law to be realized in equilibrium: density sampled on an
// increasing time grid (piecewise linear in between), plus the mass never
// completing when the horizon is finite.
struct TargetDistribution {
  std::vector<double> times;
  std::vector<double> density;
  double tail_mass = 0.0;  // mass at the incompletion sentinel

  void validate() const;
  double pdf(double t) const;
  double cdf(double t) const;  // trapezoid cdf on the grid

 private:
  mutable std::vector<double> prefix_;  // cached trapezoid masses
};

struct ReverseDesign {
  RankRewardSmooth reward;
  double min_shift = 0.0;  // smallest admissible additive constant (infinite
                           // horizon only; the reward itself is unshifted)
};

// Reward realizing a target law with an infinite horizon; unique up to an
// additive constant.  Errors if the normalized density ratio against the
// uncontrolled first-passage law is not decreasing (within 1e-9) or not
// bounded.
ReverseDesign reward_from_distribution_inf(const TargetDistribution& mu,
                                           const ModelParams& params);

// Finite-horizon variant; unique on [0, F_mu(T)].  Also requires the ratio
// to stay above the normalized incompletion rate.
RankRewardSmooth reward_from_distribution_fin(const TargetDistribution& mu,
                                              const ModelParams& params);

struct DesignSolution {
  RankReward reward;
  double objective = 0.0;
  bool feasible = true;
  std::optional<double> t_star;      // minimal quantile time
  std::optional<double> alpha_max;   // top attainable completion rate
  std::optional<double> z_star;      // auxiliary maximizer (net profit)
  std::optional<double> bonus_deadline;
  std::optional<double> b_star;      // density-ratio floor at the optimum
  std::vector<double> z_candidates;  // all grid maximizers within tolerance
};

// Cheapest-time design: the two-level scheme paying (K-R_inf)/alpha above
// the floor to the top alpha ranks minimizes the alpha-quantile under
// budget K.  With a finite horizon, infeasible when the horizon precedes
// the unconstrained optimum.
DesignSolution min_quantile_reward(const ModelParams& params, double K,
                                   double alpha);

// Smallest budget making an alpha fraction finish by the (finite) horizon.
double min_budget(const ModelParams& params, double alpha);

// Largest completion rate attainable by the horizon under budget K; the
// defining equation is solved by bisection (its right side is increasing).
double max_completion_rate(const ModelParams& params, double K);

DesignSolution max_welfare_reward(const ModelParams& params, double K);

// Decreasing principal profit g sampled on a time grid, linear in between
// and flat beyond the last knot.
struct ProfitFunction {
  std::vector<double> times;
  std::vector<double> values;

  void validate() const;
  double eval(double t) const;
  double at_infinity() const { return values.back(); }
};

// Infinite-horizon net-profit design: the optimal reward tracks g up to a
// bonus deadline and pays the floor after it.
DesignSolution max_net_profit(const ModelParams& params,
                              const ProfitFunction& g);

struct ConstantBound {
  double h_star;
  double objective;  // alpha * h_star
};

// Minimizer of int_0^alpha h over increasing h capped by exp(-R_inf/(2c s^2))
// with an entropy budget: the constant h*.
ConstantBound lemma_constant_optimum(double alpha, double K, double R_inf,
                                     double c, double sigma);

}  // namespace mft

#endif  // MFT_DESIGN_HPP_
