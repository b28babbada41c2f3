#ifndef MFT_REWARD_HPP_
#define MFT_REWARD_HPP_

#include <functional>
#include <variant>
#include <vector>

namespace mft {

// Scalar game parameters.  `horizon` may be +inf.
struct ModelParams {
  double x0 = 1.0;
  double sigma = 0.25;
  double c = 1.0;
  double horizon = 1.0;
  double floor = 0.0;  // participation reward R_inf

  void validate() const;
  bool finite_horizon() const;
  // 2 c sigma^2, the scale dividing every reward exponent.
  double reward_scale() const;
  // x0 / sigma.
  double scaled_distance() const;
};

// Piecewise-constant rank reward
//   H(r) = levels[k] on [thresholds[k-1], thresholds[k]),  right-open cells,
// with levels.size() == thresholds.size() + 1 and the last level paid on
// [thresholds.back(), 1].  thresholds lie strictly inside (0,1).
struct RankRewardStep {
  std::vector<double> thresholds;
  std::vector<double> levels;
  double floor = 0.0;

  void validate() const;
  double eval(double r) const;
  double budget() const;  // int_0^1 H
};

// Bounded decreasing reward sampled on a rank grid with 0 = grid[0] < ... <
// grid[M] = 1, interpolated piecewise-linearly.
struct RankRewardSmooth {
  std::vector<double> grid;
  std::vector<double> values;
  double floor = 0.0;

  void validate() const;
  double eval(double r) const;
  double budget() const;
};

using RankReward = std::variant<RankRewardStep, RankRewardSmooth>;

double eval_reward(const RankReward& reward, double r);
double reward_floor(const RankReward& reward);
double reward_budget(const RankReward& reward);
void validate_reward(const RankReward& reward);

// Sample H on a uniform grid of `points` + 1 ranks.
RankRewardSmooth make_smooth_reward(const std::function<double(double)>& H,
                                    int points, double floor);

// Uniform d-bin step reward with cell-average levels, so the total budget
// int_0^1 H is preserved exactly.
RankRewardStep discretize(const RankRewardSmooth& reward, int bins);

// Cumulative integral r -> int_0^r exp((R_inf - H(z)) / scale) dz and its
// inverse.  Exact for both reward forms (the integrand is exp-linear on each
// cell of a piecewise-linear H).
class ExpIntegral {
 public:
  ExpIntegral(const RankReward& reward, double floor, double scale);

  double cum(double r) const;
  double inverse(double v) const;  // cum^{-1}, v in [0, cum(1)]
  double total() const { return prefix_.back(); }

 private:
  double cell_value(int cell, double r) const;

  std::vector<double> knots_;   // rank breakpoints, 0 = knots_[0] < ... < 1
  std::vector<double> prefix_;  // cum at each knot
  std::vector<double> a_;       // integrand at left knot
  std::vector<double> la_;      // log of a_, kept for tilt-safe evaluation
  std::vector<double> slope_;   // d/dz of (R_inf - H)/scale on the cell
};

}  // namespace mft

#endif  // MFT_REWARD_HPP_
