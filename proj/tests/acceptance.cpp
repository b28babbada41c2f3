// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mft/design.hpp"
#include "mft/equilibrium_het.hpp"
#include "mft/equilibrium_hom.hpp"
#include "mft/normal.hpp"
#include "mft/nplayer_sim.hpp"
#include "mft/pie.hpp"

using namespace mft;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pinned tolerances.
constexpr double kQuartileTol = 0.002;
constexpr double kBetaTolHom = 0.001;   // 0.1 percentage points
constexpr double kValueTolHom = 0.001;
constexpr double kBetaTolHet = 0.005;   // 0.5 percentage points
constexpr double kValueTolHet = 0.01;
constexpr double kThresholdTol = 0.0005;
constexpr double kIdentityTol = 1e-8;
constexpr double kFixedPointTol = 1e-8;
constexpr double kLimitTol = 1e-3;
constexpr double kRoundTripTol = 1e-6;
constexpr double kSlopeLo = -0.7, kSlopeHi = -0.3;
constexpr double kZ99 = 2.3263478740408408;

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %d [%s]: %s  (%s)\n", idx, name,
              ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

RankReward quad_reward(double scale) {
  return make_smooth_reward(
      [scale](double r) { return scale * (1.0 - r) * (1.0 - r); }, 2000, 0.0);
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const RankReward reward = quad_reward(6.0);
  struct Row {
    double T, q25, q50, q75, beta, value;
  };
  const Row golden[] = {{0.5, 0.281, -1, -1, 0.449, 0.074},
                        {1, 0.285, 0.613, -1, 0.619, 0.121},
                        {2, 0.289, 0.630, -1, 0.736, 0.166},
                        {5, 0.293, 0.649, 2.424, 0.834, 0.215},
                        {10, 0.295, 0.658, 2.545, 0.881, 0.237},
                        {100, 0.296, 0.666, 2.661, 0.960, 0.256},
                        {kInf, 0.296, 0.667, 2.667, 1.0, 0.257}};
  double worst = 0.0;
  bool ok = true;
  for (const auto& g : golden) {
    auto eq = solve_hom(ModelParams{1.0, 0.25, 1.0, g.T, 0.0}, reward);
    auto check_q = [&](double r, double want) {
      if (want < 0) return;
      auto t = eq.quantile(r);
      const double err = t ? std::abs(*t - want) : kInf;
      worst = std::max(worst, err / kQuartileTol);
      ok = ok && err <= kQuartileTol;
    };
    check_q(0.25, g.q25);
    check_q(0.5, g.q50);
    check_q(0.75, g.q75);
    ok = ok && std::abs(eq.beta() - g.beta) <= kBetaTolHom;
    ok = ok && std::abs(eq.value() - g.value) <= kValueTolHom;
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "7 deadlines, worst quartile error %.2f of tol, %.2fs < 1s",
                worst, dt);
  report(1, "deadline table", ok, buf);
}

// ---------------------------------------------------------------- criterion 2
RankRewardStep het_reward(int bins) {
  return discretize(
      make_smooth_reward(
          [](double r) { return 15.0 * (1.0 - r) * (1.0 - r); }, 4000, 0.0),
      bins);
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;

  // homogeneous corners through the closed-form solver
  struct Hom {
    double x0, c, beta, value;
  };
  for (const Hom& h : {Hom{1, 1, 0.759, 0.178}, Hom{2, 1, 0.498, 0.086},
                       Hom{1, 4, 0.518, 0.365}}) {
    auto eq = solve_hom(ModelParams{h.x0, 0.25, h.c, 1.0, 0.0},
                        quad_reward(15.0));
    ok = ok && std::abs(eq.beta() - h.beta) <= kBetaTolHom;
    ok = ok && std::abs(eq.value() - h.value) <= kValueTolHom;
  }

  // all 11 mixtures through the rank-discretized solver
  struct Case {
    double w_ad, x0_da, c_da, beta, beta_ad, beta_da, v_ad, v_da, welfare;
  };
  const Case cases[] = {
      {1.0, 2, 1, 0.759, 0.759, -1, 0.178, -1, 0.178},
      {0.8, 2, 1, 0.738, 0.922, 0.000, 0.319, 0.000, 0.255},
      {0.6, 2, 1, 0.600, 1.000, 0.000, 1.701, 0.000, 1.020},
      {0.4, 2, 1, 0.498, 1.000, 0.164, 4.276, 0.022, 1.724},
      {0.2, 2, 1, 0.498, 1.000, 0.373, 7.338, 0.058, 1.514},
      {0.0, 2, 1, 0.498, -1, 0.498, -1, 0.086, 0.086},
      {0.8, 1, 4, 0.738, 0.922, 0.001, 0.319, 0.000, 0.255},
      {0.6, 1, 4, 0.604, 1.000, 0.009, 1.675, 0.005, 1.007},
      {0.4, 1, 4, 0.519, 1.000, 0.198, 4.030, 0.110, 1.678},
      {0.2, 1, 4, 0.518, 1.000, 0.398, 7.091, 0.253, 1.621},
      {0.0, 1, 4, 0.518, -1, 0.518, -1, 0.365, 0.365}};
  const RankRewardStep reward = het_reward(400);
  double worst = 0.0;
  for (const Case& hc : cases) {
    PopulationMix mix;
    mix.sigma = 0.25;
    if (hc.w_ad > 0.0) mix.atoms.push_back({1.0, 1.0, hc.w_ad});
    if (hc.w_ad < 1.0) mix.atoms.push_back({hc.x0_da, hc.c_da, 1.0 - hc.w_ad});
    auto eq = solve_het(mix, reward, 1.0);
    auto chk = [&](double got, double want, double tol) {
      if (want < 0) return;
      worst = std::max(worst, std::abs(got - want) / tol);
      ok = ok && std::abs(got - want) <= tol;
    };
    chk(eq.beta, hc.beta, kBetaTolHet);
    const bool has_ad = hc.w_ad > 0.0, has_da = hc.w_ad < 1.0;
    if (has_ad) {
      chk(eq.type_beta.front(), hc.beta_ad, kBetaTolHet);
      chk(eq.type_value.front(), hc.v_ad, kValueTolHet);
    }
    if (has_da) {
      chk(eq.type_beta.back(), hc.beta_da, kBetaTolHet);
      chk(eq.type_value.back(), hc.v_da, kValueTolHet);
    }
    chk(eq.welfare, hc.welfare, kValueTolHet);
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 120.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "11 mixtures at d=400, worst error %.2f of tol, %.1fs < 120s",
                worst, dt);
  report(2, "heterogeneous table", ok, buf);
}

// ---------------------------------------------------------------- criterion 3
PieReward rate_linked_pie() {
  PieReward pie;
  pie.R_inf = [](double) { return 0.0; };
  pie.H = [](double, double beta) { return beta; };
  return pie;
}

ModelParams params_for_mass(double F) {
  ModelParams p{1.0, 0.25, 1.0, 1.0, 0.0};
  p.horizon = fpt_quantile(FptLaw(p.scaled_distance()), F);
  return p;
}

void criterion3() {
  auto thresholds =
      pie_critical_thresholds(params_for_mass(0.02), rate_linked_pie());
  bool ok = thresholds.size() == 2;
  double lo = ok ? thresholds[0] : -1, hi = ok ? thresholds[1] : -1;
  ok = ok && std::abs(lo - 0.0063) <= kThresholdTol;
  ok = ok && std::abs(hi - 0.0505) <= kThresholdTol;
  std::size_t n_below =
      enumerate_pie_equilibria(params_for_mass(0.003), rate_linked_pie())
          .roots.size();
  std::size_t n_mid =
      enumerate_pie_equilibria(params_for_mass(0.02), rate_linked_pie())
          .roots.size();
  std::size_t n_above =
      enumerate_pie_equilibria(params_for_mass(0.06), rate_linked_pie())
          .roots.size();
  ok = ok && n_below == 1 && n_mid == 3 && n_above == 1;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "folds at %.6f/%.6f, root counts %zu/%zu/%zu", lo, hi,
                n_below, n_mid, n_above);
  report(3, "fold thresholds", ok, buf);
}

// ---------------------------------------------------------------- criterion 4
PieReward growth_pie(double K, double eps) {
  const double gamma = 0.5;
  PieReward pie;
  pie.R_inf = [K, gamma](double b) { return K * (1.0 + b) * gamma; };
  pie.H = [K, gamma, eps](double r, double b) {
    return K * (1.0 + b) *
           (gamma + (1.0 - gamma) * (1.0 + eps * (1.0 - 2.0 * r)));
  };
  return pie;
}

void criterion4() {
  ModelParams p{1.0, 0.25, 1.0, 1.0, 0.0};
  std::vector<double> eps_grid;
  for (int i = 0; i <= 60; ++i) eps_grid.push_back(i / 60.0);
  auto max_roots = [&](double K) {
    std::size_t n = 0;
    for (const auto& row : bifurcation_scan(
             p, [K](double e) { return growth_pie(K, e); }, eps_grid))
      n = std::max(n, row.equilibria.roots.size());
    return n;
  };
  const std::size_t small_k = max_roots(0.2), mid_k = max_roots(1.5),
                    large_k = max_roots(8.0);
  const bool ok = small_k == 1 && mid_k > 1 && large_k == 1;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "max branch counts: K=0.2 -> %zu, K=1.5 -> %zu, K=8 -> %zu",
                small_k, mid_k, large_k);
  report(4, "pie bifurcation", ok, buf);
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
  bool ok = true;
  std::string why;
  ModelParams fin{1.0, 0.25, 1.0, 1.0, 0.0};
  ModelParams inf_p{1.0, 0.25, 1.0, kInf, 0.0};

  // welfare design with no deadline attains the budget exactly
  auto welfare = max_welfare_reward(inf_p, 2.0);
  auto weq = solve_hom(inf_p, welfare.reward);
  ok = ok && std::abs(welfare.objective - 2.0) <= 1e-12;
  ok = ok && std::abs(weq.value() - 2.0) <= kIdentityTol;

  // inversion identities
  double worst = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const double K = min_budget(fin, alpha);
    const double back = max_completion_rate(fin, K);
    worst = std::max(worst, std::abs(back - alpha));
    auto sol = min_quantile_reward(inf_p, K, alpha);
    worst = std::max(worst, std::abs(*sol.t_star - fin.horizon));
  }
  ok = ok && worst <= kIdentityTol;

  // constant optimum against 500 random feasible competitors
  const double alpha = 0.6, K = 1.8, R_inf = 0.3;
  auto bound = lemma_constant_optimum(alpha, K, R_inf, 1.0, 0.25);
  const double m = 2.0 * 1.0 * 0.25 * 0.25;
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int beaten = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 128;
    std::vector<double> expo(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += unif(rng);
      expo[i] = acc;
    }
    double mean = 0.0;
    for (double e : expo) mean += e;
    mean /= n;
    const double target = -(K - R_inf * (1.0 - alpha)) / m;
    double objective = 0.0;
    for (int i = 0; i < n; ++i)
      objective +=
          std::exp(target / alpha + 0.3 * (expo[i] - mean)) * (alpha / n);
    if (objective < bound.objective * (1.0 - 1e-12)) ++beaten;
  }
  ok = ok && beaten == 0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "worst inversion error %.2e <= 1e-8, welfare exact, 0 of 500 "
                "random h beat the constant (beaten=%d)",
                worst, beaten);
  report(5, "design identities", ok, buf);
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
  bool ok = true;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // (a) best-response fixed point: f_mu = zeta f_tau on a 1000-point grid
  double worst_fp = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p{0.5 + unif(rng), 0.2 + 0.2 * unif(rng), 0.5 + unif(rng),
                  0.5 + 2.0 * unif(rng), 0.0};
    RankReward reward;
    if (trial % 2 == 0) {
      const double a = 1.0 + 5.0 * unif(rng), b = 0.5 + 2.0 * unif(rng);
      reward = make_smooth_reward(
          [a, b](double r) { return a * std::pow(1.0 - r, b); }, 1000, 0.0);
    } else {
      const int d = 3 + int(unif(rng) * 40);
      const double amp = 1.0 + 5.0 * unif(rng);
      reward = discretize(
          make_smooth_reward([amp](double r) { return amp * (1.0 - r); }, 200,
                             0.0),
          d);
    }
    auto eq = solve_hom(p, reward);
    FptLaw law(p.scaled_distance());
    for (int i = 1; i < 1000; ++i) {
      const double t = p.horizon * i / 1000.0;
      const double lhs = eq.density(t);
      const double rhs = eq.zeta(t) * fpt_pdf(law, t);
      worst_fp = std::max(worst_fp, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
  }
  ok = ok && worst_fp <= kFixedPointTol;

  // (b) heat-equation residual decays at second order
  auto eq = solve_hom(ModelParams{1.0, 0.25, 1.0, 1.0, 0.0}, quad_reward(6.0));
  auto residual = [&](double h) {
    const double t = 0.3, x = 0.8, s2 = 0.0625;
    const double ut = (u_field(eq, t + h, x) - u_field(eq, t - h, x)) / (2 * h);
    const double uxx = (u_field(eq, t, x + h) - 2 * u_field(eq, t, x) +
                        u_field(eq, t, x - h)) /
                       (h * h);
    return std::abs(ut + 0.5 * s2 * uxx) / u_field(eq, t, x);
  };
  std::vector<double> lh, lr;
  for (double h : {0.08, 0.04, 0.02, 0.01, 0.005}) {
    lh.push_back(std::log(h));
    lr.push_back(std::log(residual(h)));
  }
  double mh = 0, mr = 0;
  for (std::size_t i = 0; i < lh.size(); ++i) mh += lh[i], mr += lr[i];
  mh /= lh.size(), mr /= lr.size();
  double cv = 0, vr = 0;
  for (std::size_t i = 0; i < lh.size(); ++i) {
    cv += (lh[i] - mh) * (lr[i] - mr);
    vr += (lh[i] - mh) * (lh[i] - mh);
  }
  const double slope = cv / vr;
  ok = ok && slope > 1.6;

  // (c) monotone comparative statics with limits at the extremes
  const RankReward reward6 = quad_reward(6.0);
  double prev = 0.0;
  bool mono = true;
  for (double T : {0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
    const double b = solve_hom(ModelParams{1.0, 0.25, 1.0, T, 0.0}, reward6).beta();
    mono = mono && b > prev;
    prev = b;
  }
  const double beta_longT =
      solve_hom(ModelParams{1.0, 0.25, 1.0, 1e8, 0.0}, reward6).beta();
  mono = mono && std::abs(beta_longT - 1.0) <= kLimitTol;
  const double beta_near =
      solve_hom(ModelParams{1e-4, 0.25, 1.0, 1.0, 0.0}, reward6).beta();
  mono = mono && std::abs(beta_near - 1.0) <= kLimitTol;
  mono = mono &&
         solve_hom(ModelParams{1.0, 0.25, 0.5, 1.0, 0.0}, reward6).beta() >
             solve_hom(ModelParams{1.0, 0.25, 2.0, 1.0, 0.0}, reward6).beta();
  // value with no deadline rises in c toward the budget, falls toward the
  // worst rank's pay as effort becomes free
  const double v_lo =
      solve_hom(ModelParams{1.0, 0.25, 1e-6, kInf, 0.0}, reward6).value();
  const double v_mid =
      solve_hom(ModelParams{1.0, 0.25, 1.0, kInf, 0.0}, reward6).value();
  const double v_hi =
      solve_hom(ModelParams{1.0, 0.25, 1e7, kInf, 0.0}, reward6).value();
  const double budget = reward_budget(reward6);
  mono = mono && v_lo < v_mid && v_mid < v_hi;
  mono = mono && std::abs(v_hi - budget) <= kLimitTol * budget;
  mono = mono && std::abs(v_lo - 0.0) <= kLimitTol;
  ok = ok && mono;

  // (d) reverse engineering round-trips the reward to 1e-6
  ModelParams inf_p{1.0, 0.25, 1.0, kInf, 0.0};
  auto H = [](double r) { return 4.0 * (1.0 - r) * (1.0 - r); };
  auto src = solve_hom(inf_p, make_smooth_reward(H, 4000, 0.0));
  TargetDistribution mu;
  const int n = 600000;
  const double r_max = 0.9995;
  // geometric head resolves the essential singularity of the density at 0
  for (int j = 640; j >= 1; --j) {
    const double r = r_max / n * std::pow(0.5, j * 0.0625);
    const double t = *src.quantile(r);
    mu.times.push_back(t);
    mu.density.push_back(src.density(t));
  }
  for (int i = 1; i <= n; ++i) {
    const double t = *src.quantile(r_max * i / n);
    mu.times.push_back(t);
    mu.density.push_back(src.density(t));
  }
  mu.tail_mass = 1.0 - r_max;
  auto design = reward_from_distribution_inf(mu, inf_p);
  double worst_rt = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double got = design.reward.eval(r) - design.reward.eval(0.5);
    worst_rt = std::max(worst_rt, std::abs(got - (H(r) - H(0.5))));
  }
  ok = ok && worst_rt <= kRoundTripTol;

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "fixed-point residual %.2e <= 1e-8, heat slope %.2f > 1.6, "
                "monotone sweeps %s, round trip %.2e <= 1e-6",
                worst_fp, slope, mono ? "ok" : "BROKEN", worst_rt);
  report(6, "structural properties", ok, buf);
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  auto eq = solve_hom(ModelParams{1.0, 0.25, 1.0, 1.0, 0.0}, quad_reward(6.0));

  SimConfig base;
  base.dt = 1e-3;
  base.seed = 2026;
  for (double lam : {0.9, 0.95, 0.98, 0.99, 1.01, 1.05})
    base.deviations.push_back({DeviationStrategy::Kind::Scale, lam});

  // eps_N: 99% upper confidence bound on the best tested deviation gain.
  // The raw maximum is itself noisy and crosses zero once the finite-N
  // advantage falls below Monte Carlo resolution; the bound stays positive
  // and tracks the epsilon-Nash envelope.
  const int Ns[] = {64, 256, 1024, 4096};
  std::vector<double> log_n, log_eps;
  double final_lcb = 0.0;
  std::string detail;
  for (int N : Ns) {
    SimConfig cfg = base;
    cfg.N = N;
    cfg.replications = 65536 / N;
    auto rep = simulate_nplayer(eq, cfg);
    double ucb = -kInf, lcb = -kInf;
    for (const auto& g : rep.deviation_gains) {
      ucb = std::max(ucb, g.gain + kZ99 * g.se);
      lcb = std::max(lcb, g.gain - kZ99 * g.se);
    }
    log_n.push_back(std::log(double(N)));
    log_eps.push_back(std::log(std::max(ucb, 1e-7)));
    if (N == Ns[3]) final_lcb = lcb;
    char piece[64];
    std::snprintf(piece, sizeof(piece), "eps(%d)=%.2e ", N, ucb);
    detail += piece;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    mx += log_n[i];
    my += log_eps[i];
  }
  mx /= log_n.size();
  my /= log_eps.size();
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    cov += (log_n[i] - mx) * (log_eps[i] - my);
    var += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = cov / var;
  bool ok = slope >= kSlopeLo && slope <= kSlopeHi;
  ok = ok && final_lcb <= 0.0;  // no significant gain at the largest N

  // zero-effort validation against the plain passage law
  ModelParams zp{0.5, 0.25, 1.0, 1.0, 0.0};
  auto zeq = solve_hom(zp, RankReward(RankRewardStep{{}, {0.0}, 0.0}));
  SimConfig zcfg;
  zcfg.N = 4096;
  zcfg.dt = 1e-3;
  zcfg.seed = 7;
  zcfg.replications = 8;
  auto zrep = simulate_nplayer(zeq, zcfg);
  const double F = fpt_cdf(FptLaw(zp.scaled_distance()), zp.horizon);
  const double se = std::sqrt(F * (1.0 - F) / (4096.0 * 8.0));
  const double zdev = std::abs(zrep.beta_hat - F) / se;
  ok = ok && zdev < 3.0;

  const double dt = seconds_since(t0);
  ok = ok && dt < 600.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%sslope %.2f in [-0.7,-0.3], top-N lower bound %.1e <= 0, "
                "zero-effort %.1f se, %.0fs < 600s",
                detail.c_str(), slope, final_lcb, zdev, dt);
  report(7, "finite-N approximation", ok, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS"
                                    : "SOME CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
