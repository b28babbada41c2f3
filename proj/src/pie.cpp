#include "mft/pie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mft/fpt.hpp"
#include "mft/quadrature.hpp"

namespace mft {
namespace {

constexpr int kScanPoints = 10000;

// (1/(1-b)) int_0^b exp((R_inf(b) - H(z,b)) / m) dz.
double phi(const PieReward& pie, double b, double m) {
  if (b <= 0.0) return 0.0;
  const double floor = pie.R_inf(b);
  const double integral = gauss_legendre_composite(
      [&](double z) { return std::exp((floor - pie.H(z, b)) / m); }, 0.0, b,
      32);
  return integral / (1.0 - b);
}

void append_root(PieEquilibriumSet* out, double b, int mult) {
  if (!out->roots.empty() && std::abs(b - out->roots.back()) < 1e-8) {
    out->multiplicity.back() += mult;
    return;
  }
  out->roots.push_back(b);
  out->multiplicity.push_back(mult);
}

PieEquilibriumSet enumerate_at(const ModelParams& params, const PieReward& pie,
                               double fpt_T) {
  const double m = params.reward_scale();
  const double C = fpt_T / (1.0 - fpt_T);
  auto g = [&](double b) { return phi(pie, b, m) - C; };

  PieEquilibriumSet out;
  double prev_b = 0.0;
  double prev_g = g(0.0);  // = -C < 0
  for (int i = 1; i <= kScanPoints; ++i) {
    const double b = double(i) / (kScanPoints + 1);
    const double gb = g(b);
    if (gb == 0.0) {
      append_root(&out, b, 1);
    } else if ((prev_g < 0.0) != (gb < 0.0)) {
      double lo = prev_b, hi = b;
      bool lo_neg = prev_g < 0.0;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) < 0.0) == lo_neg ? lo : hi) = mid;
      }
      append_root(&out, 0.5 * (lo + hi), 1);
    }
    prev_b = b;
    prev_g = gb;
  }
  if (out.roots.empty()) {
    // phi -> inf at 1, so a root hides beyond the last grid point.
    double lo = prev_b, hi = 1.0 - 1e-14;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    append_root(&out, 0.5 * (lo + hi), 1);
  }

  for (std::size_t i = 0; i + 1 < out.roots.size(); ++i) {
    if (out.roots[i + 1] - out.roots[i] < 2.0 / kScanPoints) {
      out.grid_warning = true;
    }
  }
  for (double b : out.roots) {
    out.values.push_back(pie.R_inf(b) +
                         m * std::log((1.0 - fpt_T) / (1.0 - b)));
    out.efforts.push_back(params.x0 * (b - fpt_T) / (1.0 - fpt_T));
  }
  out.dominant = int(out.roots.size()) - 1;
  return out;
}

}  // namespace

PieEquilibriumSet enumerate_pie_equilibria(const ModelParams& params,
                                           const PieReward& pie) {
  params.validate();
  if (!params.finite_horizon()) {
    throw std::domain_error("rate-dependent pies need a finite horizon");
  }
  FptLaw law(params.scaled_distance());
  return enumerate_at(params, pie, fpt_cdf(law, params.horizon));
}

std::vector<BifurcationRow> bifurcation_scan(
    const ModelParams& params,
    const std::function<PieReward(double eps)>& family,
    const std::vector<double>& eps_grid) {
  std::vector<BifurcationRow> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    rows.push_back({eps, enumerate_pie_equilibria(params, family(eps))});
  }
  return rows;
}

std::vector<double> pie_critical_thresholds(const ModelParams& params,
                                            const PieReward& pie) {
  const double m = params.reward_scale();
  auto f = [&](double b) { return phi(pie, b, m); };

  // Fold points of the rate curve are its interior local extrema; each one
  // maps to the horizon mass F where the root count changes.
  const int n = 20000;
  std::vector<double> thresholds;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double b_prev = 1.0 / (n + 1), f_prev = f(b_prev);
  double b_mid = 2.0 / (n + 1), f_mid = f(b_mid);
  for (int i = 3; i <= n; ++i) {
    const double b = double(i) / (n + 1);
    const double fb = f(b);
    const bool is_max = f_mid > f_prev && f_mid > fb;
    const bool is_min = f_mid < f_prev && f_mid < fb;
    if (is_max || is_min) {
      double a = b_prev, d = b;
      const double sign = is_max ? 1.0 : -1.0;
      double x1 = d - gr * (d - a), x2 = a + gr * (d - a);
      double f1 = sign * f(x1), f2 = sign * f(x2);
      while (d - a > 1e-12) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (d - a);
          f2 = sign * f(x2);
        } else {
          d = x2;
          x2 = x1;
          f2 = f1;
          x1 = d - gr * (d - a);
          f1 = sign * f(x1);
        }
      }
      const double C = f(0.5 * (a + d));
      thresholds.push_back(C / (1.0 + C));
    }
    b_prev = b_mid;
    f_prev = f_mid;
    b_mid = b;
    f_mid = fb;
  }
  std::sort(thresholds.begin(), thresholds.end());
  return thresholds;
}

}  // namespace mft
