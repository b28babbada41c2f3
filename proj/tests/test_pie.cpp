#include <cmath>

#include <doctest.h>

#include "mft/equilibrium_hom.hpp"
#include "mft/pie.hpp"

using namespace mft;

namespace {

ModelParams params_F(double F) {
  // horizon chosen so the uncontrolled completion mass equals F
  ModelParams p{1.0, 0.25, 1.0, 1.0, 0.0};
  p.horizon = fpt_quantile(FptLaw(p.scaled_distance()), F);
  return p;
}

PieReward rate_linked_pie() {
  PieReward pie;
  pie.R_inf = [](double) { return 0.0; };
  pie.H = [](double, double beta) { return beta; };
  return pie;
}

}  // namespace

TEST_CASE("rate-independent pie reduces to the fixed-pie equilibrium") {
  ModelParams p{1.0, 0.25, 1.0, 1.0, 0.0};
  auto H = [](double r) { return 6.0 * (1.0 - r) * (1.0 - r); };
  PieReward pie;
  pie.R_inf = [](double) { return 0.0; };
  pie.H = [H](double r, double) { return H(r); };
  auto set = enumerate_pie_equilibria(p, pie);
  REQUIRE(set.roots.size() == 1);
  const double fixed = solve_beta(p, make_smooth_reward(H, 2000, 0.0));
  CHECK(set.roots[0] == doctest::Approx(fixed).epsilon(1e-6));
}

TEST_CASE("root counts across the published bracket") {
  CHECK(enumerate_pie_equilibria(params_F(0.003), rate_linked_pie()).roots.size() == 1);
  auto mid = enumerate_pie_equilibria(params_F(0.02), rate_linked_pie());
  CHECK(mid.roots.size() == 3);
  CHECK(enumerate_pie_equilibria(params_F(0.06), rate_linked_pie()).roots.size() == 1);
  // dominant equilibrium is the largest root
  CHECK(mid.dominant == 2);
  CHECK(mid.values[2] >= mid.values[0]);
}

TEST_CASE("every root satisfies the rate equation") {
  ModelParams p = params_F(0.02);
  const double m = p.reward_scale();
  const double F = 0.02;
  auto set = enumerate_pie_equilibria(p, rate_linked_pie());
  for (double b : set.roots) {
    // with H - R_inf = beta the integrand is constant in z
    const double phi = b * std::exp(-b / m) / (1.0 - b);
    CHECK(std::abs(phi - F / (1.0 - F)) < 1e-10);
  }
}

TEST_CASE("published fold thresholds") {
  auto thresholds = pie_critical_thresholds(params_F(0.02), rate_linked_pie());
  REQUIRE(thresholds.size() == 2);
  CHECK(thresholds[0] == doctest::Approx(0.0063).epsilon(0.0005 / 0.0063));
  CHECK(thresholds[1] == doctest::Approx(0.0505).epsilon(0.0005 / 0.0505));
}

TEST_CASE("fixed pie has no fold thresholds") {
  ModelParams p{1.0, 0.25, 1.0, 1.0, 0.0};
  PieReward pie;
  pie.R_inf = [](double) { return 0.0; };
  pie.H = [](double r, double) { return 3.0 * (1.0 - r); };
  CHECK(pie_critical_thresholds(p, pie).empty());
}

TEST_CASE("bifurcation scan flags the multi-valued window") {
  // total pie K(1+beta), half participation, half rank-weighted
  const double K = 1.5, gamma = 0.5;
  auto family = [K, gamma](double eps) {
    PieReward pie;
    pie.R_inf = [K, gamma](double b) { return K * (1.0 + b) * gamma; };
    pie.H = [K, gamma, eps](double r, double b) {
      return K * (1.0 + b) *
             (gamma + (1.0 - gamma) * (1.0 + eps * (1.0 - 2.0 * r)));
    };
    return pie;
  };
  ModelParams p{1.0, 0.25, 1.0, 1.0, 0.0};
  std::vector<double> eps_grid;
  for (int i = 0; i <= 40; ++i) eps_grid.push_back(i / 40.0);
  auto table = bifurcation_scan(p, family, eps_grid);
  REQUIRE(table.size() == eps_grid.size());
  std::size_t max_roots = 0;
  for (const auto& row : table)
    max_roots = std::max(max_roots, row.equilibria.roots.size());
  CHECK(max_roots > 1);
  // eps = 0 row agrees with a direct enumeration
  auto direct = enumerate_pie_equilibria(p, family(0.0));
  REQUIRE(table[0].equilibria.roots.size() == direct.roots.size());
  for (std::size_t i = 0; i < direct.roots.size(); ++i)
    CHECK(table[0].equilibria.roots[i] ==
          doctest::Approx(direct.roots[i]).epsilon(1e-10));
}
