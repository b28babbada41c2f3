#ifndef MFT_EQUILIBRIUM_HOM_HPP_
#define MFT_EQUILIBRIUM_HOM_HPP_

#include <memory>
#include <optional>
#include <vector>

#include "mft/fpt.hpp"
#include "mft/reward.hpp"

namespace mft {

// Closed-form mean-field equilibrium for homogeneous players under a purely
// rank-based reward with deadline.  The quantile function composes the
// cumulative exp-reward integral with the Brownian first-passage quantile;
// beta solves the terminal completion-rate equation by bisection.
class HomEquilibrium {
 public:
  HomEquilibrium(const ModelParams& params, const RankReward& reward);

  const ModelParams& params() const { return params_; }
  const RankReward& reward() const { return reward_; }
  double beta() const { return beta_; }
  double value() const { return value_; }
  double fpt_horizon_mass() const { return fpt_T_; }  // F_tau(T)

  // r-th quantile of the completion time law; nullopt is the incompletion
  // sentinel Delta (r > beta with a finite deadline).
  std::optional<double> quantile(double r) const;
  double cdf(double t) const;
  double density(double t) const;

  // u(t,0)/u(0,x0), the equilibrium distortion of the uncontrolled law.
  double zeta(double t) const;

  const ExpIntegral& integral() const { return *integral_; }

 private:
  ModelParams params_;
  RankReward reward_;
  std::shared_ptr<const ExpIntegral> integral_;
  FptLaw law_;
  double fpt_T_;
  double beta_;
  double value_;
};

// Terminal completion rate, solved by bisection; the residual gate adapts
// to the conditioning of the equation as the rate approaches 1.
double solve_beta(const ModelParams& params, const RankReward& reward);

HomEquilibrium solve_hom(const ModelParams& params, const RankReward& reward);

// x0 (beta - F_tau(T)) / (1 - F_tau(T)); finite horizon only.
double expected_effort(const HomEquilibrium& eq);

// Cole-Hopf transformed value u(t,x) under the equilibrium population law:
// an exact finite sum for step rewards, quadrature for smooth ones.
double u_field(const HomEquilibrium& eq, double t, double x);

// Optimal feedback effort -sigma^2 u_x / u (0 for x <= 0).
double effort_field(const HomEquilibrium& eq, double t, double x);

// Time-staged rewards delta_k H on (T_{k-1}, T_k].
struct StagedEquilibrium {
  std::vector<double> stage_times;  // 0 = T_0 < ... < T_n = T
  std::vector<double> multipliers;
  std::vector<double> alphas;  // F_tau at stage times
  std::vector<double> betas;   // F_mu at stage times
  double value;

  std::optional<double> quantile(double r) const;

  // Internals needed by quantile().
  std::vector<std::shared_ptr<const ExpIntegral>> stage_integrals;
  FptLaw law{1.0};
};

StagedEquilibrium solve_staged(const ModelParams& params,
                               const RankReward& base,
                               const std::vector<double>& stage_times,
                               const std::vector<double>& multipliers);

}  // namespace mft

#endif  // MFT_EQUILIBRIUM_HOM_HPP_
