#ifndef MFT_PIE_HPP_
#define MFT_PIE_HPP_

#include <functional>
#include <vector>

#include "mft/reward.hpp"

namespace mft {

// Tournament whose reward depends on the population completion rate beta:
// within the deadline a finisher of rank r gets H(r, beta), afterwards the
// participation reward R_inf(beta).
struct PieReward {
  std::function<double(double r, double beta)> H;
  std::function<double(double beta)> R_inf;
};

struct PieEquilibriumSet {
  std::vector<double> roots;    // completion rates, ascending
  std::vector<double> values;   // game value per root
  std::vector<double> efforts;  // expected total effort per root
  std::vector<int> multiplicity;
  int dominant = -1;  // index of highest-value root (the largest one)
  bool grid_warning = false;  // roots closer than two scan cells
};

// All completion rates solving the rate equation, by sign-change scan on a
// 1e4-point grid plus bisection; at least one root exists.
PieEquilibriumSet enumerate_pie_equilibria(const ModelParams& params,
                                           const PieReward& pie);

struct BifurcationRow {
  double eps;
  PieEquilibriumSet equilibria;
};

std::vector<BifurcationRow> bifurcation_scan(
    const ModelParams& params,
    const std::function<PieReward(double eps)>& family,
    const std::vector<double>& eps_grid);

// Values of the uncontrolled horizon mass F at which the root count of the
// rate equation changes (fold points of the rate curve).  Empty when the
// curve is monotone.
std::vector<double> pie_critical_thresholds(const ModelParams& params,
                                            const PieReward& pie);

}  // namespace mft

#endif  // MFT_PIE_HPP_
