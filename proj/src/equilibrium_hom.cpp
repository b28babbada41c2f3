#include "mft/equilibrium_hom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mft/normal.hpp"
#include "mft/quadrature.hpp"

namespace mft {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793238462643383279502884;

double scaled(double v, double m) { return std::exp(v / m); }

RankReward scale_reward(const RankReward& base, double factor) {
  RankReward out = base;
  std::visit(
      [factor](auto& r) {
        auto& vals = [](auto& rr) -> std::vector<double>& {
          if constexpr (std::is_same_v<std::decay_t<decltype(rr)>,
                                       RankRewardStep>) {
            return rr.levels;
          } else {
            return rr.values;
          }
        }(r);
        for (double& v : vals) v *= factor;
      },
      out);
  return out;
}

}  // namespace

double solve_beta(const ModelParams& params, const RankReward& reward) {
  params.validate();
  validate_reward(reward);
  if (!params.finite_horizon()) return 1.0;

  const double m = params.reward_scale();
  FptLaw law(params.scaled_distance());
  const double ft = fpt_cdf(law, params.horizon);
  ExpIntegral integral(reward, reward_floor(reward), m);

  // g(b) = cum(b)/(1-b) - F/(1-F): g(F) <= 0 (the integrand is <= 1) and
  // g -> +inf at 1, so bisection brackets the unique root.
  const double target = ft / (1.0 - ft);
  auto g = [&](double b) { return integral.cum(b) / (1.0 - b) - target; };
  double lo = ft, hi = 1.0 - 1e-16;
  if (g(lo) >= 0.0) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  const double beta = 0.5 * (lo + hi);
  const double residual =
      ft - (1.0 - ft) / (1.0 - beta) * integral.cum(beta);
  // One ulp of beta moves the residual by ~ft/(1-beta), so the attainable
  // accuracy degrades as the completion rate approaches 1.
  const double tol = std::max(
      1e-12, 8.0 * std::numeric_limits<double>::epsilon() * ft / (1.0 - beta));
  if (std::abs(residual) > tol) {
    throw std::runtime_error("completion-rate equation did not converge");
  }
  return beta;
}

HomEquilibrium::HomEquilibrium(const ModelParams& params,
                               const RankReward& reward)
    : params_(params),
      reward_(reward),
      law_(params.scaled_distance()) {
  params_.validate();
  validate_reward(reward_);
  const double m = params_.reward_scale();
  integral_ = std::make_shared<const ExpIntegral>(
      reward_, reward_floor(reward_), m);
  if (params_.finite_horizon()) {
    fpt_T_ = fpt_cdf(law_, params_.horizon);
    beta_ = solve_beta(params_, reward_);
    value_ = params_.floor + m * std::log((1.0 - fpt_T_) / (1.0 - beta_));
  } else {
    fpt_T_ = 1.0;
    beta_ = 1.0;
    value_ = params_.floor - m * std::log(integral_->total());
  }
}

HomEquilibrium solve_hom(const ModelParams& params, const RankReward& reward) {
  return HomEquilibrium(params, reward);
}

std::optional<double> HomEquilibrium::quantile(double r) const {
  if (r < 0.0 || r > 1.0) throw std::domain_error("rank outside [0,1]");
  if (params_.finite_horizon()) {
    if (r > beta_) return std::nullopt;
    const double p = (1.0 - fpt_T_) / (1.0 - beta_) * integral_->cum(r);
    return fpt_quantile(law_, std::min(p, fpt_T_));
  }
  return fpt_quantile(law_, integral_->cum(r) / integral_->total());
}

double HomEquilibrium::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (params_.finite_horizon()) {
    if (t >= params_.horizon) return beta_;
    const double v = fpt_cdf(law_, t) * (1.0 - beta_) / (1.0 - fpt_T_);
    return integral_->inverse(v);
  }
  return integral_->inverse(fpt_cdf(law_, t) * integral_->total());
}

double HomEquilibrium::density(double t) const {
  if (t <= 0.0) return 0.0;
  if (params_.finite_horizon() && t >= params_.horizon) return 0.0;
  const double m = params_.reward_scale();
  const double r = cdf(t);
  const double tilt =
      std::exp((eval_reward(reward_, r) - params_.floor) / m);
  const double factor = params_.finite_horizon()
                            ? (1.0 - beta_) / (1.0 - fpt_T_)
                            : integral_->total();
  return fpt_pdf(law_, t) * factor * tilt;
}

double HomEquilibrium::zeta(double t) const {
  // u(0,x0) = exp(V/m) exactly, so no quadrature is needed here.
  const double m = params_.reward_scale();
  return u_field(*this, t, 0.0) * std::exp(-value_ / m);
}

double u_field(const HomEquilibrium& eq, double t, double x) {
  const ModelParams& p = eq.params();
  const double m = p.reward_scale();
  const double T = p.horizon;
  if (t < 0.0) throw std::domain_error("negative time");

  if (x <= 0.0) {
    // Finished: the player collects the reward of the current rank.
    if (p.finite_horizon() && t > T) return scaled(p.floor, m);
    return scaled(eval_reward(eq.reward(), eq.cdf(t)), m);
  }

  FptLaw lawx(x / p.sigma);
  auto survive = [&](double abs_time) {
    if (std::isinf(abs_time)) return 1.0;
    return fpt_cdf(lawx, std::max(abs_time - t, 0.0));
  };

  if (const auto* step = std::get_if<RankRewardStep>(&eq.reward())) {
    // Absolute times at which the population crosses each rank threshold.
    double acc = 0.0;
    double prev = 0.0;  // F_x at stage start
    for (std::size_t k = 0; k < step->levels.size(); ++k) {
      double edge;
      if (k + 1 < step->levels.size()) {
        auto q = eq.quantile(step->thresholds[k]);
        edge = q ? std::min(*q, T) : T;
      } else {
        edge = p.finite_horizon() ? T : kInf;
      }
      const double cur = survive(edge);
      acc += scaled(step->levels[k], m) * (cur - prev);
      prev = cur;
    }
    acc += scaled(p.floor, m) * (1.0 - prev);
    return acc;
  }

  // Smooth reward: substitute z = y / sqrt(s) in the completion-time
  // integral so f_x(s) ds = 2 phi(z) dz, and shift by the peak exponent --
  // the raw integrand pairs huge reward tilts with tiny passage densities.
  const double y = lawx.y;
  const double z_lo = p.finite_horizon() ? y / std::sqrt(T - t) : 1e-12;
  const double acc_tail =
      p.finite_horizon() ? scaled(p.floor, m) * (1.0 - survive(T)) : 0.0;
  // Exponent e(z) = log(2 phi(z)) + H(F(t + y^2/z^2)) / m.
  auto exponent = [&](double z) {
    const double r = eq.cdf(t + y * y / (z * z));
    return -0.5 * z * z - 0.5 * std::log(2.0 * kPi) + std::log(2.0) +
           eval_reward(eq.reward(), r) / m;
  };
  const double h_max = std::visit(
      [](const auto& r) {
        const auto& vals = [](const auto& rr) -> const std::vector<double>& {
          if constexpr (std::is_same_v<std::decay_t<decltype(rr)>,
                                       RankRewardStep>) {
            return rr.levels;
          } else {
            return rr.values;
          }
        }(r);
        return *std::max_element(vals.begin(), vals.end());
      },
      eq.reward());
  const double z_hi = std::max(
      z_lo + 1.0,
      std::sqrt(2.0 * ((h_max - std::min(0.0, p.floor)) / m + 60.0)));
  double e_max = -kInf;
  const int n_scan = 256;
  for (int i = 0; i <= n_scan; ++i) {
    const double z = z_lo + (z_hi - z_lo) * i / n_scan;
    e_max = std::max(e_max, exponent(z));
  }
  const double body =
      gauss_legendre_composite(
          [&](double z) { return std::exp(exponent(z) - e_max); }, z_lo, z_hi,
          64) *
      std::exp(e_max);
  return acc_tail + body;
}

double effort_field(const HomEquilibrium& eq, double t, double x) {
  if (x <= 0.0) return 0.0;
  const ModelParams& p = eq.params();
  const double m = p.reward_scale();
  const double T = p.horizon;
  const double u = u_field(eq, t, x);

  double ux;
  if (const auto* step = std::get_if<RankRewardStep>(&eq.reward())) {
    auto dsurvive = [&](double abs_time) {
      if (std::isinf(abs_time)) return 0.0;
      const double s = abs_time - t;
      if (s <= 0.0) return 0.0;
      return fpt_cdf_dx(x, p.sigma, s);
    };
    ux = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < step->levels.size(); ++k) {
      double edge;
      if (k + 1 < step->levels.size()) {
        auto q = eq.quantile(step->thresholds[k]);
        edge = q ? std::min(*q, T) : T;
      } else {
        edge = p.finite_horizon() ? T : kInf;
      }
      const double cur = dsurvive(edge);
      ux += scaled(step->levels[k], m) * (cur - prev);
      prev = cur;
    }
    ux += scaled(p.floor, m) * (0.0 - prev);
  } else {
    const double h = std::min(1e-4 * std::max(1.0, x), 0.5 * x);
    ux = (u_field(eq, t, x + h) - u_field(eq, t, x - h)) / (2.0 * h);
  }
  return -p.sigma * p.sigma * ux / u;
}

double expected_effort(const HomEquilibrium& eq) {
  const ModelParams& p = eq.params();
  if (!p.finite_horizon()) {
    throw std::domain_error("expected effort needs a finite horizon");
  }
  return p.x0 * (eq.beta() - eq.fpt_horizon_mass()) /
         (1.0 - eq.fpt_horizon_mass());
}

StagedEquilibrium solve_staged(const ModelParams& params,
                               const RankReward& base,
                               const std::vector<double>& stage_times,
                               const std::vector<double>& multipliers) {
  params.validate();
  validate_reward(base);
  if (!params.finite_horizon()) {
    throw std::domain_error("staged rewards need a finite horizon");
  }
  const std::size_t n = stage_times.size();
  if (n == 0 || multipliers.size() != n) {
    throw std::invalid_argument("stage times / multipliers mismatch");
  }
  double prev = 0.0;
  for (double tk : stage_times) {
    if (!(tk > prev)) throw std::invalid_argument("stage times not increasing");
    prev = tk;
  }
  if (std::abs(stage_times.back() - params.horizon) > 1e-12) {
    throw std::invalid_argument("last stage time must equal the horizon");
  }
  for (double d : multipliers) {
    if (!(d > 0.0)) throw std::invalid_argument("multipliers must be positive");
  }

  const double m = params.reward_scale();
  StagedEquilibrium out;
  out.stage_times = stage_times;
  out.multipliers = multipliers;
  out.law = FptLaw(params.scaled_distance());
  out.alphas.resize(n);
  out.stage_integrals.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.alphas[k] = fpt_cdf(out.law, stage_times[k]);
    out.stage_integrals[k] = std::make_shared<const ExpIntegral>(
        scale_reward(base, multipliers[k]), params.floor, m);
  }
  const double an = out.alphas.back();

  // The per-stage mass-balance system reduces to a forward recursion once
  // the terminal rate is fixed; bisect on that rate.
  auto forward = [&](double bn, std::vector<double>* betas) {
    const double D = (1.0 - bn) / (1.0 - an);
    double bk = 0.0, ak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ExpIntegral& I = *out.stage_integrals[k];
      const double target = I.cum(bk) + (out.alphas[k] - ak) * D;
      bk = (target >= I.total()) ? 1.0 - 1e-16 : I.inverse(target);
      ak = out.alphas[k];
      if (betas) (*betas)[k] = bk;
    }
    return bk;
  };

  double lo = an, hi = 1.0 - 1e-16;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (forward(mid, nullptr) > mid ? lo : hi) = mid;
  }
  out.betas.assign(n, 0.0);
  const double bn = 0.5 * (lo + hi);
  forward(bn, &out.betas);
  if (std::abs(out.betas.back() - bn) > 1e-9) {
    throw std::runtime_error("staged system did not converge");
  }
  out.value =
      params.floor + m * std::log((1.0 - an) / (1.0 - out.betas.back()));
  return out;
}

std::optional<double> StagedEquilibrium::quantile(double r) const {
  if (r < 0.0 || r > 1.0) throw std::domain_error("rank outside [0,1]");
  if (r > betas.back()) return std::nullopt;
  const double D = (1.0 - betas.back()) / (1.0 - alphas.back());
  double bprev = 0.0, aprev = 0.0;
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (r <= betas[k] || k + 1 == betas.size()) {
      const ExpIntegral& I = *stage_integrals[k];
      const double p = aprev + (I.cum(r) - I.cum(bprev)) / D;
      return fpt_quantile(law, std::min(p, alphas[k]));
    }
    bprev = betas[k];
    aprev = alphas[k];
  }
  return std::nullopt;  // unreachable
}

}  // namespace mft
