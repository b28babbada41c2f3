#include "mft/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mft/fpt.hpp"
#include "mft/quadrature.hpp"

namespace mft {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRatioTol = 1e-9;  // slack allowed in monotonicity checks

double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

RankRewardStep cutoff_scheme(double floor, double K, double alpha) {
  RankRewardStep H;
  H.thresholds = {alpha};
  H.levels = {floor + (K - floor) / alpha, floor};
  H.floor = floor;
  return H;
}

}  // namespace

void TargetDistribution::validate() const {
  if (times.size() < 2 || times.size() != density.size()) {
    throw std::invalid_argument("bad target distribution grid");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("times not increasing");
    }
    if (!(density[i] > 0.0) || !std::isfinite(density[i])) {
      throw std::invalid_argument("density must be strictly positive");
    }
  }
  if (tail_mass < 0.0 || tail_mass >= 1.0) {
    throw std::invalid_argument("tail mass outside [0,1)");
  }
  double mass = tail_mass;
  for (std::size_t i = 1; i < times.size(); ++i) {
    mass += 0.5 * (density[i - 1] + density[i]) * (times[i] - times[i - 1]);
  }
  if (std::abs(mass - 1.0) > 1e-3) {
    throw std::invalid_argument("target distribution mass far from 1");
  }
}

double TargetDistribution::pdf(double t) const {
  if (t <= times.front()) return density.front();
  if (t >= times.back()) return density.back();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = it - times.begin();
  const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
  return density[i - 1] + w * (density[i] - density[i - 1]);
}

double TargetDistribution::cdf(double t) const {
  if (prefix_.size() != times.size()) {
    prefix_.assign(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i) {
      prefix_[i] = prefix_[i - 1] + 0.5 * (density[i - 1] + density[i]) *
                                        (times[i] - times[i - 1]);
    }
  }
  if (t <= times.front()) return 0.0;
  if (t >= times.back()) return prefix_.back();
  const std::size_t i =
      std::upper_bound(times.begin(), times.end(), t) - times.begin();
  return prefix_[i - 1] +
         0.5 * (density[i - 1] + pdf(t)) * (t - times[i - 1]);
}

namespace {

// Normalized density ratio against the uncontrolled first-passage law on the
// target's grid, validated decreasing and bounded.
std::vector<double> density_ratio(const TargetDistribution& mu,
                                  const ModelParams& params) {
  FptLaw law(params.scaled_distance());
  std::vector<double> zeta(mu.times.size());
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    const double base = fpt_pdf(law, mu.times[i]);
    if (!(base > 0.0)) {
      throw std::invalid_argument("grid must start after time 0");
    }
    zeta[i] = mu.density[i] / base;
    if (!std::isfinite(zeta[i])) {
      throw std::domain_error("not realizable: unbounded density ratio");
    }
    if (i > 0 && zeta[i] > zeta[i - 1] * (1.0 + kRatioTol) + kRatioTol) {
      throw std::domain_error("not realizable: density ratio not decreasing");
    }
  }
  return zeta;
}

}  // namespace

ReverseDesign reward_from_distribution_inf(const TargetDistribution& mu,
                                           const ModelParams& params) {
  params.validate();
  mu.validate();
  if (params.finite_horizon()) {
    throw std::domain_error("infinite-horizon reconstruction needs T = inf");
  }
  const auto zeta = density_ratio(mu, params);
  const double m = params.reward_scale();

  ReverseDesign out;
  out.reward.floor = -kInf;  // unshifted profile; caller applies min_shift
  out.reward.grid.reserve(mu.times.size() + 2);
  out.reward.values.reserve(mu.times.size() + 2);
  double last_r = -1.0;
  for (std::size_t i = 0; i < mu.times.size(); ++i) {
    const double r = mu.cdf(mu.times[i]);
    if (r <= last_r) continue;
    last_r = r;
    out.reward.grid.push_back(r);
    out.reward.values.push_back(m * std::log(zeta[i]));
  }
  if (out.reward.grid.front() > 0.0) {
    out.reward.grid.insert(out.reward.grid.begin(), 0.0);
    out.reward.values.insert(out.reward.values.begin(),
                             out.reward.values.front());
  }
  if (out.reward.grid.back() < 1.0) {
    out.reward.grid.push_back(1.0);
    out.reward.values.push_back(out.reward.values.back());
  }
  const double inf_zeta =
      *std::min_element(zeta.begin(), zeta.end());
  out.min_shift = params.floor - m * std::log(inf_zeta);
  out.reward.floor = *std::min_element(out.reward.values.begin(),
                                       out.reward.values.end());
  return out;
}

RankRewardSmooth reward_from_distribution_fin(const TargetDistribution& mu,
                                              const ModelParams& params) {
  params.validate();
  mu.validate();
  if (!params.finite_horizon()) {
    throw std::domain_error("finite-horizon reconstruction needs T < inf");
  }
  if (mu.times.back() > params.horizon * (1.0 + 1e-12)) {
    throw std::invalid_argument("target grid exceeds the horizon");
  }
  const auto zeta = density_ratio(mu, params);
  FptLaw law(params.scaled_distance());
  const double m = params.reward_scale();
  const double beta = 1.0 - mu.tail_mass;
  const double delta = mu.tail_mass / (1.0 - fpt_cdf(law, params.horizon));
  if (!(delta > 0.0)) throw std::invalid_argument("tail mass must be positive");
  const double inf_zeta = *std::min_element(zeta.begin(), zeta.end());
  if (inf_zeta < delta * (1.0 - kRatioTol) - kRatioTol) {
    throw std::domain_error(
        "not realizable: density ratio dips below the incompletion rate");
  }

  RankRewardSmooth H;
  H.floor = params.floor;
  double last_r = -1.0;
  for (std::size_t i = 0; i < mu.times.size(); ++i) {
    const double r = std::min(mu.cdf(mu.times[i]), beta);
    if (r <= last_r) continue;
    last_r = r;
    H.grid.push_back(r);
    H.values.push_back(params.floor +
                       m * (std::log(zeta[i]) - std::log(delta)));
  }
  if (H.grid.front() > 0.0) {
    H.grid.insert(H.grid.begin(), 0.0);
    H.values.insert(H.values.begin(), H.values.front());
  }
  // Beyond the completing fraction the reward is irrelevant; pay the floor,
  // with a narrow ramp carrying any jump at beta.
  if (H.grid.back() < 1.0) {
    const double edge = std::min(H.grid.back() + 1e-9, 1.0);
    if (edge < 1.0) {
      H.grid.push_back(edge);
      H.values.push_back(params.floor);
    }
    H.grid.push_back(1.0);
    H.values.push_back(params.floor);
  }
  for (double& v : H.values) v = std::max(v, params.floor);
  H.validate();
  return H;
}

DesignSolution min_quantile_reward(const ModelParams& params, double K,
                                   double alpha) {
  params.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
  if (K < params.floor) throw std::domain_error("budget below the floor");
  const double am = alpha * params.reward_scale();  // 2 alpha c sigma^2
  FptLaw law(params.scaled_distance());

  DesignSolution sol;
  sol.reward = cutoff_scheme(params.floor, K, alpha);
  const double boost = std::exp((K - params.floor) / am);
  const double t_star =
      fpt_quantile(law, alpha / (alpha + (1.0 - alpha) * boost));
  sol.t_star = t_star;
  sol.objective = t_star;
  if (params.finite_horizon() && params.horizon < t_star) {
    sol.feasible = false;  // no scheme reaches rate alpha by the deadline
    sol.objective = kInf;
  }
  return sol;
}

double min_budget(const ModelParams& params, double alpha) {
  params.validate();
  if (!params.finite_horizon()) throw std::domain_error("needs a finite horizon");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
  FptLaw law(params.scaled_distance());
  const double F = fpt_cdf(law, params.horizon);
  const double K = params.floor +
                   alpha * params.reward_scale() *
                       std::log(alpha / (1.0 - alpha) * (1.0 - F) / F);
  return std::max(K, params.floor);
}

double max_completion_rate(const ModelParams& params, double K) {
  params.validate();
  if (!params.finite_horizon()) throw std::domain_error("needs a finite horizon");
  if (K < params.floor) throw std::domain_error("budget below the floor");
  FptLaw law(params.scaled_distance());
  const double F = fpt_cdf(law, params.horizon);
  const double C = F / (1.0 - F);
  const double m = params.reward_scale();
  auto rhs = [&](double a) {
    return a / (1.0 - a) * std::exp((params.floor - K) / (a * m));
  };
  double lo = 0.0, hi = 1.0 - 1e-16;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rhs(mid) < C ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DesignSolution max_welfare_reward(const ModelParams& params, double K) {
  params.validate();
  if (K < params.floor) throw std::domain_error("budget below the floor");
  DesignSolution sol;
  if (!params.finite_horizon()) {
    RankRewardStep flat;
    flat.levels = {K};
    flat.floor = params.floor;
    sol.reward = flat;
    sol.objective = K;
    return sol;
  }
  const double alpha = max_completion_rate(params, K);
  FptLaw law(params.scaled_distance());
  const double F = fpt_cdf(law, params.horizon);
  sol.reward = cutoff_scheme(params.floor, K, alpha);
  sol.alpha_max = alpha;
  sol.objective =
      params.floor + params.reward_scale() * std::log((1.0 - F) / (1.0 - alpha));
  return sol;
}

void ProfitFunction::validate() const {
  if (times.size() < 2 || times.size() != values.size()) {
    throw std::invalid_argument("bad profit table");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("profit times not increasing");
    }
    if (values[i] > values[i - 1] + 1e-12) {
      throw std::domain_error("profit function must be decreasing");
    }
  }
  if (!(times.front() >= 0.0)) throw std::invalid_argument("negative time");
  if (values.front() - values.back() <= 1e-12) {
    throw std::domain_error("profit function must not be constant");
  }
}

double ProfitFunction::eval(double t) const {
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = it - times.begin();
  const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
  return values[i - 1] + w * (values[i] - values[i - 1]);
}

DesignSolution max_net_profit(const ModelParams& params,
                              const ProfitFunction& g) {
  params.validate();
  if (params.finite_horizon()) {
    throw std::domain_error("net-profit design needs T = inf");
  }
  g.validate();
  const double m = params.reward_scale();
  FptLaw law(params.scaled_distance());

  // Ratio objective over the candidate bonus deadline z; a coarse tolerance
  // is enough for the scan, the refinement below re-evaluates tightly.
  auto U_tol = [&](double z, double quad_tol) {
    const double numer = fpt_expectation(
        law,
        [&](double t) {
          return g.eval(std::max(t, z)) * std::exp(g.eval(std::min(t, z)) / m);
        },
        quad_tol);
    const double denom = fpt_expectation(
        law, [&](double t) { return std::exp(g.eval(std::min(t, z)) / m); },
        quad_tol);
    return numer / denom - params.floor;
  };
  auto U = [&](double z) { return U_tol(z, 1e-11); };
  auto U_scan = [&](double z) { return U_tol(z, 1e-8); };

  // Log-spaced scan followed by golden-section refinement around the best
  // bracket; beyond the last profit knot the objective is constant.
  const double z_hi = g.times.back();
  const int n_grid = 256;
  std::vector<double> zs;
  zs.push_back(0.0);
  const double z_lo = std::max(1e-6 * z_hi, 1e-9);
  for (int i = 0; i <= n_grid; ++i) {
    zs.push_back(z_lo * std::pow(z_hi / z_lo, double(i) / n_grid));
  }
  std::size_t best = 0;
  double best_val = -kInf;
  std::vector<double> vals(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    vals[i] = U_scan(zs[i]);
    if (vals[i] > best_val) {
      best_val = vals[i];
      best = i;
    }
  }
  const double a = best > 0 ? zs[best - 1] : zs[0];
  const double b = best + 1 < zs.size() ? zs[best + 1] : zs.back();
  const double z_star = golden_max(U, a, b, 1e-10 * std::max(1.0, z_hi));
  const double u_star = U(z_star);

  DesignSolution sol;
  sol.z_star = z_star;
  sol.objective = u_star;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (vals[i] >= best_val - 1e-6 * std::max(1.0, std::abs(best_val)))
      sol.z_candidates.push_back(zs[i]);
  }

  // Bonus deadline: first time g reaches its level at z*.
  const double g_star = g.eval(z_star);
  double tb = z_star;
  if (g.eval(0.0) <= g_star + 1e-12) {
    tb = 0.0;
  } else {
    double lo = 0.0, hi = z_star;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g.eval(mid) > g_star + 1e-12 ? lo : hi) = mid;
    }
    tb = hi;
  }
  sol.bonus_deadline = tb;
  const double b_star = 1.0 / fpt_expectation(
                                  law,
                                  [&](double t) {
                                    return std::exp(
                                        (g.eval(std::min(t, tb)) - g_star) / m);
                                  },
                                  1e-11);
  sol.b_star = b_star;

  // Equilibrium cdf of the designed game on a quantile grid, used to read
  // off the reward as a function of rank.
  const int M = 4096;
  RankRewardSmooth H;
  H.floor = params.floor;
  std::vector<double> p(M + 1), w(M + 1);
  for (int i = 0; i <= M; ++i) {
    p[i] = double(i) / M * (1.0 - 1e-12);
    const double t = fpt_quantile(law, p[i]);
    w[i] = std::exp((g.eval(std::min(t, tb)) - g_star) / m);
  }
  double r = 0.0;
  double last_r = -1.0;
  for (int i = 0; i <= M; ++i) {
    if (i > 0) r += b_star * 0.5 * (w[i - 1] + w[i]) * (p[i] - p[i - 1]);
    const double rank = std::min(r, 1.0);
    if (rank <= last_r) continue;
    last_r = rank;
    const double t = fpt_quantile(law, p[i]);
    H.grid.push_back(rank);
    H.values.push_back(params.floor + g.eval(std::min(t, tb)) - g_star);
  }
  if (H.grid.back() < 1.0) {
    H.grid.push_back(1.0);
    H.values.push_back(params.floor);
  }
  for (std::size_t i = 1; i < H.values.size(); ++i) {
    H.values[i] = std::min(H.values[i], H.values[i - 1]);
  }
  H.validate();
  sol.reward = H;
  return sol;
}

ConstantBound lemma_constant_optimum(double alpha, double K, double R_inf,
                                     double c, double sigma) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("alpha outside (0,1]");
  if (K < R_inf) throw std::domain_error("budget below the floor");
  ConstantBound out;
  out.h_star =
      std::exp(-(K - R_inf * (1.0 - alpha)) / (2.0 * alpha * c * sigma * sigma));
  out.objective = alpha * out.h_star;
  return out;
}

}  // namespace mft
