#include "mft/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mft {

void ModelParams::validate() const {
  if (!(x0 > 0.0)) throw std::domain_error("ModelParams: x0 must be > 0");
  if (!(sigma > 0.0)) throw std::domain_error("ModelParams: sigma must be > 0");
  if (!(c > 0.0)) throw std::domain_error("ModelParams: c must be > 0");
  if (!(horizon > 0.0)) throw std::domain_error("ModelParams: horizon must be > 0");
}

bool ModelParams::finite_horizon() const { return std::isfinite(horizon); }

double ModelParams::reward_scale() const { return 2.0 * c * sigma * sigma; }

double ModelParams::scaled_distance() const { return x0 / sigma; }

void RankRewardStep::validate() const {
  if (levels.size() != thresholds.size() + 1)
    throw std::domain_error("step reward: need one more level than thresholds");
  double prev = 0.0;
  for (double r : thresholds) {
    if (!(r > prev && r < 1.0))
      throw std::domain_error("step reward: thresholds must be strictly increasing in (0,1)");
    prev = r;
  }
  for (size_t k = 0; k + 1 < levels.size(); ++k)
    if (levels[k] + 1e-12 < levels[k + 1])
      throw std::domain_error("step reward: levels must be weakly decreasing");
  if (levels.back() + 1e-12 < floor)
    throw std::domain_error("step reward: levels must dominate the floor");
}

double RankRewardStep::eval(double r) const {
  if (r < 0.0 || r > 1.0) throw std::domain_error("eval_reward: rank outside [0,1]");
  size_t k = std::upper_bound(thresholds.begin(), thresholds.end(), r) -
             thresholds.begin();
  return levels[k];
}

double RankRewardStep::budget() const {
  double total = 0.0, prev = 0.0;
  for (size_t k = 0; k < thresholds.size(); ++k) {
    total += levels[k] * (thresholds[k] - prev);
    prev = thresholds[k];
  }
  total += levels.back() * (1.0 - prev);
  return total;
}

void RankRewardSmooth::validate() const {
  if (grid.size() < 2 || grid.size() != values.size())
    throw std::domain_error("smooth reward: grid/values size mismatch");
  if (grid.front() != 0.0 || grid.back() != 1.0)
    throw std::domain_error("smooth reward: grid must span [0,1]");
  for (size_t j = 0; j + 1 < grid.size(); ++j) {
    if (!(grid[j] < grid[j + 1]))
      throw std::domain_error("smooth reward: grid must be strictly increasing");
    if (values[j] + 1e-12 < values[j + 1])
      throw std::domain_error("smooth reward: values must be weakly decreasing");
  }
  for (double v : values)
    if (!std::isfinite(v) || v + 1e-12 < floor)
      throw std::domain_error("smooth reward: values must be finite and >= floor");
}

double RankRewardSmooth::eval(double r) const {
  if (r < 0.0 || r > 1.0) throw std::domain_error("eval_reward: rank outside [0,1]");
  size_t j = std::upper_bound(grid.begin(), grid.end(), r) - grid.begin();
  if (j == 0) return values.front();
  if (j == grid.size()) return values.back();
  double w = (r - grid[j - 1]) / (grid[j] - grid[j - 1]);
  return values[j - 1] + w * (values[j] - values[j - 1]);
}

double RankRewardSmooth::budget() const {
  double total = 0.0;
  for (size_t j = 0; j + 1 < grid.size(); ++j)
    total += 0.5 * (values[j] + values[j + 1]) * (grid[j + 1] - grid[j]);
  return total;
}

double eval_reward(const RankReward& reward, double r) {
  return std::visit([r](const auto& h) { return h.eval(r); }, reward);
}

double reward_floor(const RankReward& reward) {
  return std::visit([](const auto& h) { return h.floor; }, reward);
}

double reward_budget(const RankReward& reward) {
  return std::visit([](const auto& h) { return h.budget(); }, reward);
}

void validate_reward(const RankReward& reward) {
  std::visit([](const auto& h) { h.validate(); }, reward);
}

RankRewardSmooth make_smooth_reward(const std::function<double(double)>& H,
                                    int points, double floor) {
  RankRewardSmooth out;
  out.floor = floor;
  out.grid.resize(points + 1);
  out.values.resize(points + 1);
  for (int j = 0; j <= points; ++j) {
    out.grid[j] = static_cast<double>(j) / points;
    out.values[j] = H(out.grid[j]);
  }
  out.validate();
  return out;
}

RankRewardStep discretize(const RankRewardSmooth& reward, int bins) {
  if (bins < 1) throw std::domain_error("discretize: need at least one bin");
  RankRewardStep out;
  out.floor = reward.floor;
  out.levels.resize(bins);
  out.thresholds.resize(bins - 1);
  for (int k = 0; k + 1 < bins; ++k)
    out.thresholds[k] = static_cast<double>(k + 1) / bins;

  // Cell average of a piecewise-linear function, exact by trapezoids on the
  // overlap of each bin with each grid cell.
  auto avg = [&](double a, double b) {
    double total = 0.0;
    size_t j = std::upper_bound(reward.grid.begin(), reward.grid.end(), a) -
               reward.grid.begin();
    if (j == 0) j = 1;
    double lo = a;
    while (lo < b && j < reward.grid.size()) {
      double hi = std::min(b, reward.grid[j]);
      total += 0.5 * (reward.eval(lo) + reward.eval(hi)) * (hi - lo);
      lo = hi;
      ++j;
    }
    return total / (b - a);
  };
  for (int k = 0; k < bins; ++k)
    out.levels[k] = avg(static_cast<double>(k) / bins,
                        static_cast<double>(k + 1) / bins);
  // Sampling noise can break monotonicity at the 1e-15 level; clamp it.
  for (int k = 1; k < bins; ++k)
    out.levels[k] = std::min(out.levels[k], out.levels[k - 1]);
  out.validate();
  return out;
}

ExpIntegral::ExpIntegral(const RankReward& reward, double floor, double scale) {
  if (!(scale > 0.0)) throw std::domain_error("ExpIntegral: scale must be > 0");
  if (const auto* step = std::get_if<RankRewardStep>(&reward)) {
    knots_.push_back(0.0);
    for (double t : step->thresholds) knots_.push_back(t);
    knots_.push_back(1.0);
    for (size_t k = 0; k + 1 < knots_.size(); ++k) {
      la_.push_back((floor - step->levels[k]) / scale);
      a_.push_back(std::exp(la_.back()));
      slope_.push_back(0.0);
    }
  } else {
    const auto& s = std::get<RankRewardSmooth>(reward);
    knots_ = s.grid;
    for (size_t j = 0; j + 1 < knots_.size(); ++j) {
      la_.push_back((floor - s.values[j]) / scale);
      a_.push_back(std::exp(la_.back()));
      slope_.push_back(-(s.values[j + 1] - s.values[j]) /
                       ((knots_[j + 1] - knots_[j]) * scale));
    }
  }
  prefix_.assign(knots_.size(), 0.0);
  for (size_t k = 0; k + 1 < knots_.size(); ++k)
    prefix_[k + 1] = prefix_[k] + cell_value(static_cast<int>(k), knots_[k + 1]);
}

// Integral of a_[cell] * exp(slope * (z - left)) from the cell's left knot
// to r.
double ExpIntegral::cell_value(int cell, double r) const {
  double w = r - knots_[cell];
  double s = slope_[cell];
  if (std::abs(s * w) < 1e-8)
    return a_[cell] * w * (1.0 + 0.5 * s * w + s * s * w * w / 6.0);
  // (exp(la + s w) - exp(la)) / s, shifted by the larger exponent so an
  // overflowing factor never meets an underflowing one.
  const double peak = la_[cell] + std::max(s * w, 0.0);
  return std::exp(peak) * (-std::expm1(-std::abs(s) * w)) / std::abs(s);
}

double ExpIntegral::cum(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return prefix_.back();
  size_t k = std::upper_bound(knots_.begin(), knots_.end(), r) -
             knots_.begin() - 1;
  return prefix_[k] + cell_value(static_cast<int>(k), r);
}

double ExpIntegral::inverse(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= prefix_.back()) return 1.0;
  size_t k = std::upper_bound(prefix_.begin(), prefix_.end(), v) -
             prefix_.begin() - 1;
  double target = v - prefix_[k];
  double s = slope_[k];
  double w;
  if (std::abs(s) < 1e-12) {
    w = target / a_[k];
  } else {
    w = std::log1p(s * target / a_[k]) / s;
  }
  // A Newton step removes the residual of the log1p branch near cell ends.
  double r = knots_[k] + w;
  double f = cell_value(static_cast<int>(k), r) - target;
  double df = std::exp(la_[k] + s * (r - knots_[k]));
  r -= f / df;
  return std::clamp(r, knots_[k], knots_[k + 1]);
}

}  // namespace mft
