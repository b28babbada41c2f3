#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mft/serialize.hpp"

namespace {

using mft::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_time(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return kInf;
  return std::stod(s);
}

mft::RankReward parse_reward(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "quadratic") {
    const double scale = arg.empty() ? 6.0 : std::stod(arg);
    return mft::make_smooth_reward(
        [scale](double r) { return scale * (1.0 - r) * (1.0 - r); }, 2000,
        0.0);
  }
  if (kind == "constant") {
    mft::RankRewardStep step;
    step.levels = {arg.empty() ? 0.0 : std::stod(arg)};
    step.floor = 0.0;
    return step;
  }
  if (kind == "config") {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot read reward file " + arg);
    return mft::reward_from_json(json::parse(in));
  }
  throw std::invalid_argument("unknown reward spec \"" + spec + "\"");
}

struct Diff {
  std::string name;
  double got, want, tol;
  bool ok() const { return std::abs(got - want) <= tol; }
};

int write_diff_report(const std::string& out_dir, const std::string& target,
                      const std::vector<Diff>& diffs) {
  std::string report;
  bool all_ok = true;
  for (const auto& d : diffs) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s got=%-12.6g want=%-12.6g tol=%g %s\n",
                  d.name.c_str(), d.got, d.want, d.tol,
                  d.ok() ? "ok" : "MISMATCH");
    report += line;
    all_ok = all_ok && d.ok();
  }
  report += all_ok ? "RESULT: match\n" : "RESULT: mismatch\n";
  mft::write_file(out_dir + "/" + target + "_diff.txt", report);
  std::fputs(report.c_str(), stdout);
  return all_ok ? 0 : 3;
}

mft::RankReward table1_reward() {
  return mft::make_smooth_reward(
      [](double r) { return 6.0 * (1.0 - r) * (1.0 - r); }, 2000, 0.0);
}

mft::RankRewardStep table2_reward(int bins) {
  return mft::discretize(
      (mft::make_smooth_reward(
          [](double r) { return 15.0 * (1.0 - r) * (1.0 - r); }, 4000, 0.0)),
      bins);
}

int cmd_solve_hom(const mft::ModelParams& params, const mft::RankReward& reward,
                  const std::string& out_dir) {
  auto eq = mft::solve_hom(params, reward);
  json j = mft::to_json(eq);
  j["expected_effort"] =
      params.finite_horizon() ? json(mft::expected_effort(eq)) : json(nullptr);
  mft::write_file(out_dir + "/equilibrium.json", j.dump(2) + "\n");

  std::vector<std::vector<double>> qrows, drows;
  for (int i = 1; i < 200; ++i) {
    const double r = i / 200.0;
    auto t = eq.quantile(r);
    if (t && std::isfinite(*t)) qrows.push_back({r, *t});
  }
  mft::write_file(out_dir + "/quantiles.csv", mft::to_csv({"rank", "time"}, qrows));
  const double t_max =
      params.finite_horizon() ? params.horizon : *eq.quantile(0.99);
  for (int i = 1; i <= 200; ++i) {
    const double t = t_max * i / 200.0;
    drows.push_back({t, eq.cdf(t), eq.density(t),
                     mft::effort_field(eq, std::min(t, t_max * 0.9999),
                                       params.x0 * 0.5)});
  }
  mft::write_file(out_dir + "/density.csv",
                  mft::to_csv({"time", "cdf", "density", "effort_at_half_x0"},
                              drows));
  std::printf("beta=%s value=%s\n", mft::format_double(eq.beta()).c_str(),
              mft::format_double(eq.value()).c_str());
  return 0;
}

int cmd_reproduce_table1(const std::string& out_dir) {
  const mft::RankReward reward = table1_reward();
  struct Row {
    double T, q25, q50, q75, beta, value;
  };
  // Dashes mean the quantile exceeds the completion rate (never attained).
  const Row golden[] = {
      {0.5, 0.281, -1, -1, 0.449, 0.074},  {1, 0.285, 0.613, -1, 0.619, 0.121},
      {2, 0.289, 0.630, -1, 0.736, 0.166}, {5, 0.293, 0.649, 2.424, 0.834, 0.215},
      {10, 0.295, 0.658, 2.545, 0.881, 0.237},
      {100, 0.296, 0.666, 2.661, 0.960, 0.256},
      {kInf, 0.296, 0.667, 2.667, 1.0, 0.257}};
  std::vector<std::vector<double>> rows;
  std::vector<Diff> diffs;
  for (const auto& g : golden) {
    mft::ModelParams p{1.0, 0.25, 1.0, g.T, 0.0};
    auto eq = mft::solve_hom(p, reward);
    auto q = [&](double r) {
      auto t = eq.quantile(r);
      return t && std::isfinite(*t) ? *t : -1.0;
    };
    rows.push_back({g.T, q(0.25), q(0.5), q(0.75), eq.beta(), eq.value()});
    const std::string tag = "T=" + mft::format_double(g.T);
    if (g.q25 > 0) diffs.push_back({tag + " q25", q(0.25), g.q25, 0.002});
    if (g.q50 > 0) diffs.push_back({tag + " q50", q(0.5), g.q50, 0.002});
    if (g.q75 > 0) diffs.push_back({tag + " q75", q(0.75), g.q75, 0.002});
    diffs.push_back({tag + " beta", eq.beta(), g.beta, 0.001});
    diffs.push_back({tag + " value", eq.value(), g.value, 0.001});
  }
  mft::write_file(out_dir + "/table1.csv",
                  mft::to_csv({"T", "q25", "q50", "q75", "beta", "value"}, rows));
  return write_diff_report(out_dir, "table1", diffs);
}

struct HetCase {
  double w_ad;             // weight of type (1,1)
  double x0_da, c_da;      // disadvantaged type
  double beta, beta_ad, beta_da, v_ad, v_da, welfare;
};

// Mixtures over (x0,c) in {(1,1),(2,1),(1,4)}; -1 marks absent entries.
const HetCase kTable2[] = {
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

mft::HetEquilibrium solve_table2_case(const HetCase& hc, int bins) {
  mft::PopulationMix mix;
  mix.sigma = 0.25;
  if (hc.w_ad > 0.0) mix.atoms.push_back({1.0, 1.0, hc.w_ad});
  if (hc.w_ad < 1.0) mix.atoms.push_back({hc.x0_da, hc.c_da, 1.0 - hc.w_ad});
  return mft::solve_het(mix, table2_reward(bins), 1.0);
}

int cmd_reproduce_table2(const std::string& out_dir, int bins) {
  std::vector<std::vector<double>> rows;
  std::vector<Diff> diffs;
  for (std::size_t k = 0; k < std::size(kTable2); ++k) {
    const HetCase& hc = kTable2[k];
    auto eq = solve_table2_case(hc, bins);
    const bool has_ad = hc.w_ad > 0.0, has_da = hc.w_ad < 1.0;
    const double beta_ad = has_ad ? eq.type_beta.front() : -1;
    const double beta_da = has_da ? eq.type_beta.back() : -1;
    const double v_ad = has_ad ? eq.type_value.front() : -1;
    const double v_da = has_da ? eq.type_value.back() : -1;
    rows.push_back({double(k), eq.beta, beta_ad, beta_da, v_ad, v_da,
                    eq.welfare});
    const std::string tag = "case " + std::to_string(k);
    diffs.push_back({tag + " beta", eq.beta, hc.beta, 0.005});
    if (has_ad) {
      diffs.push_back({tag + " beta_AD", beta_ad, hc.beta_ad, 0.005});
      diffs.push_back({tag + " V_AD", v_ad, hc.v_ad, 0.01});
    }
    if (has_da) {
      diffs.push_back({tag + " beta_DA", beta_da, hc.beta_da, 0.005});
      diffs.push_back({tag + " V_DA", v_da, hc.v_da, 0.01});
    }
    diffs.push_back({tag + " welfare", eq.welfare, hc.welfare, 0.01});
  }
  mft::write_file(
      out_dir + "/table2.csv",
      mft::to_csv({"case", "beta", "beta_ad", "beta_da", "v_ad", "v_da",
                   "welfare"},
                  rows));
  return write_diff_report(out_dir, "table2", diffs);
}

int cmd_reproduce_fig3(const std::string& out_dir) {
  // Reward family K(1+p)(1-r)^p: more convex pay concentrates the prize at
  // the top. With a moderate budget the welfare falls in p; with a small
  // budget the ordering breaks.
  const std::vector<double> ps{0.5, 1.0, 2.0, 3.0, 5.0};
  std::vector<std::vector<double>> rows;
  std::vector<Diff> diffs;
  auto values_for = [&](double K) {
    std::vector<double> vals;
    for (double p : ps) {
      auto reward = mft::make_smooth_reward(
          [K, p](double r) { return K * (1.0 + p) * std::pow(1.0 - r, p); },
          2000, 0.0);
      auto eq = mft::solve_hom(mft::ModelParams{1.0, 0.25, 1.0, 1.0, 0.0},
                               reward);
      rows.push_back({K, p, eq.beta(), eq.value()});
      vals.push_back(eq.value());
    }
    return vals;
  };
  const auto big = values_for(2.0);
  bool decreasing = true;
  for (std::size_t i = 1; i < big.size(); ++i)
    decreasing = decreasing && big[i] < big[i - 1];
  diffs.push_back({"K=2 value decreasing in p", decreasing ? 1.0 : 0.0, 1.0,
                   0.0});
  const auto small = values_for(0.1);
  bool rises = false;
  for (std::size_t i = 1; i < small.size(); ++i)
    rises = rises || small[i] > small[i - 1] + 1e-12;
  diffs.push_back({"K=0.1 value not monotone in p", rises ? 1.0 : 0.0, 1.0,
                   0.0});
  mft::write_file(out_dir + "/fig3_convexity.csv",
                  mft::to_csv({"K", "p", "beta", "value"}, rows));
  return write_diff_report(out_dir, "fig3", diffs);
}

int cmd_reproduce_fig4(const std::string& out_dir) {
  // Welfare against the effort cost with a deadline: cheap effort means
  // wasteful racing, expensive effort means missed deadlines, so the value
  // peaks in between.
  std::vector<std::vector<double>> rows;
  std::vector<double> vals;
  const std::vector<double> cs{0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  for (double c : cs) {
    auto eq = mft::solve_hom(mft::ModelParams{1.0, 0.25, c, 1.0, 0.0},
                             table1_reward());
    rows.push_back({c, eq.value()});
    vals.push_back(eq.value());
  }
  const std::size_t peak =
      std::max_element(vals.begin(), vals.end()) - vals.begin();
  std::vector<Diff> diffs;
  diffs.push_back({"value peaks at an interior cost",
                   peak > 0 && peak + 1 < vals.size() ? 1.0 : 0.0, 1.0, 0.0});
  mft::write_file(out_dir + "/fig4_cost.csv",
                  mft::to_csv({"c", "value"}, rows));
  return write_diff_report(out_dir, "fig4", diffs);
}

mft::PieReward fig5_pie() {
  mft::PieReward pie;
  pie.R_inf = [](double) { return 0.0; };
  pie.H = [](double, double beta) { return beta; };  // H - R_inf = beta
  return pie;
}

int cmd_reproduce_fig5(const std::string& out_dir) {
  // Horizon chosen so the uncontrolled mass sweeps through the fold points.
  mft::ModelParams base{1.0, 0.25, 1.0, 1.0, 0.0};
  auto thresholds = mft::pie_critical_thresholds(base, fig5_pie());
  std::vector<Diff> diffs;
  diffs.push_back({"lower threshold",
                   thresholds.empty() ? -1 : thresholds.front(), 0.0063,
                   0.0005});
  diffs.push_back({"upper threshold",
                   thresholds.size() < 2 ? -1 : thresholds.back(), 0.0505,
                   0.0005});
  std::vector<std::vector<double>> rows;
  for (double F : {0.003, 0.02, 0.06}) {
    mft::ModelParams p = base;
    p.horizon = mft::fpt_quantile(mft::FptLaw(p.scaled_distance()), F);
    auto set = mft::enumerate_pie_equilibria(p, fig5_pie());
    rows.push_back({F, double(set.roots.size())});
    diffs.push_back({"roots at F=" + mft::format_double(F),
                     double(set.roots.size()), F == 0.02 ? 3.0 : 1.0, 0.0});
  }
  mft::write_file(out_dir + "/fig5_roots.csv",
                  mft::to_csv({"F", "root_count"}, rows));
  return write_diff_report(out_dir, "fig5", diffs);
}

mft::PieReward fig6_pie(double K, double eps) {
  // Total pie K(1+beta), half paid for participation, half rank-weighted.
  const double gamma = 0.5;
  mft::PieReward pie;
  pie.R_inf = [K, gamma](double beta) { return K * (1.0 + beta) * gamma; };
  pie.H = [K, gamma, eps](double r, double beta) {
    return K * (1.0 + beta) *
           (gamma + (1.0 - gamma) * (1.0 + eps * (1.0 - 2.0 * r)));
  };
  return pie;
}

int cmd_reproduce_fig6(const std::string& out_dir) {
  mft::ModelParams params{1.0, 0.25, 1.0, 1.0, 0.0};
  std::vector<double> eps_grid;
  for (int i = 0; i <= 60; ++i) eps_grid.push_back(i / 60.0);
  std::vector<Diff> diffs;
  std::vector<std::vector<double>> rows;
  for (double K : {0.2, 1.5, 8.0}) {
    auto table = mft::bifurcation_scan(
        params, [K](double eps) { return fig6_pie(K, eps); }, eps_grid);
    std::size_t max_roots = 0;
    for (const auto& row : table) {
      max_roots = std::max(max_roots, row.equilibria.roots.size());
      for (std::size_t i = 0; i < row.equilibria.roots.size(); ++i)
        rows.push_back({K, row.eps, double(i), row.equilibria.roots[i],
                        row.equilibria.values[i]});
    }
    diffs.push_back({"K=" + mft::format_double(K) + " multi-valued",
                     max_roots > 1 ? 1.0 : 0.0, K == 1.5 ? 1.0 : 0.0, 0.0});
  }
  mft::write_file(out_dir + "/fig6_branches.csv",
                  mft::to_csv({"K", "eps", "branch", "beta", "value"}, rows));
  return write_diff_report(out_dir, "fig6", diffs);
}

int cmd_design(const std::string& problem, const mft::ModelParams& params,
               double K, double alpha, const std::string& g_path,
               const std::string& out_dir) {
  mft::DesignSolution sol;
  if (problem == "quantile") {
    sol = mft::min_quantile_reward(params, K, alpha);
  } else if (problem == "budget") {
    sol.objective = mft::min_budget(params, alpha);
    sol.reward = mft::RankRewardStep{{alpha}, {sol.objective / alpha, 0.0}, 0.0};
  } else if (problem == "rate") {
    sol.objective = mft::max_completion_rate(params, K);
    sol.alpha_max = sol.objective;
    sol.reward = mft::RankRewardStep{{}, {K}, 0.0};
  } else if (problem == "welfare") {
    sol = mft::max_welfare_reward(params, K);
  } else if (problem == "profit") {
    std::ifstream in(g_path);
    if (!in) throw std::invalid_argument("cannot read profit curve " + g_path);
    mft::ProfitFunction g;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ss(line);
      double t, v;
      char comma;
      ss >> t >> comma >> v;
      g.times.push_back(t);
      g.values.push_back(v);
    }
    g.validate();
    sol = mft::max_net_profit(params, g);
  } else {
    throw std::invalid_argument("unknown design problem \"" + problem + "\"");
  }
  mft::write_file(out_dir + "/design.json", mft::to_json(sol).dump(2) + "\n");
  std::printf("objective=%s\n", mft::format_double(sol.objective).c_str());
  return 0;
}

int cmd_simulate(const mft::ModelParams& params, const mft::RankReward& reward,
                 mft::SimConfig cfg, const std::vector<int>& sweep,
                 bool zero_effort, const std::string& out_dir) {
  const mft::RankReward used =
      zero_effort ? mft::RankReward(mft::RankRewardStep{{}, {0.0}, 0.0})
                  : reward;
  auto eq = mft::solve_hom(params, used);
  if (sweep.empty()) {
    auto report = mft::simulate_nplayer(eq, cfg);
    mft::write_file(out_dir + "/sim.json", mft::to_json(report).dump(2) + "\n");
    std::printf("beta_hat=%s mean_payoff=%s\n",
                mft::format_double(report.beta_hat).c_str(),
                mft::format_double(report.mean_payoff).c_str());
    return 0;
  }
  std::vector<std::vector<double>> rows;
  for (int N : sweep) {
    mft::SimConfig c = cfg;
    c.N = N;
    c.replications = std::max(4, cfg.replications * cfg.N / N);
    auto report = mft::simulate_nplayer(eq, c);
    double max_gain = -kInf, max_se = 0.0;
    for (const auto& g : report.deviation_gains) {
      if (g.gain > max_gain) {
        max_gain = g.gain;
        max_se = g.se;
      }
    }
    rows.push_back({double(N), report.beta_hat, report.mean_payoff, max_gain,
                    max_se});
  }
  mft::write_file(
      out_dir + "/sweep.csv",
      mft::to_csv({"N", "beta_hat", "mean_payoff", "max_gain", "se"}, rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field tournament solver"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  app.add_option("--out", out_dir, "output directory");

  std::string T_str = "1", reward_spec = "quadratic:6", preset;
  double x0 = 1.0, sigma = 0.25, c = 1.0, floor = 0.0;
  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--T", T_str);
    cmd->add_option("--x0", x0);
    cmd->add_option("--sigma", sigma);
    cmd->add_option("--c", c);
    cmd->add_option("--floor", floor);
  };

  auto* solve_hom = app.add_subcommand("solve-hom", "homogeneous equilibrium");
  solve_hom->fallthrough();
  add_model_flags(solve_hom);
  solve_hom->add_option("--reward", reward_spec);
  solve_hom->add_option("--preset", preset);

  auto* solve_het = app.add_subcommand("solve-het", "heterogeneous equilibrium");
  solve_het->fallthrough();
  std::string het_config;
  int het_bins = 400;
  int het_case = -1;
  solve_het->add_option("--config", het_config);
  solve_het->add_option("--bins", het_bins);
  solve_het->add_option("--case", het_case, "built-in mixture case");

  auto* design = app.add_subcommand("design", "reward design problems");
  design->fallthrough();
  std::string problem, g_path;
  double K = 2.0, alpha = 0.5;
  design->add_option("problem", problem)->required();
  add_model_flags(design);
  design->add_option("--K", K);
  design->add_option("--alpha", alpha);
  design->add_option("--g", g_path);

  auto* simulate = app.add_subcommand("simulate", "finite-N Monte Carlo");
  simulate->fallthrough();
  add_model_flags(simulate);
  simulate->add_option("--reward", reward_spec);
  mft::SimConfig sim_cfg;
  std::vector<int> sweep;
  bool zero_effort = false;
  simulate->add_option("--N", sim_cfg.N);
  simulate->add_option("--dt", sim_cfg.dt);
  simulate->add_option("--seed", sim_cfg.seed);
  simulate->add_option("--reps", sim_cfg.replications);
  simulate->add_option("--sweep", sweep)->delimiter(',');
  simulate->add_flag("--zero-effort", zero_effort);
  std::vector<double> dev_scales{0.9, 1.1};
  simulate->add_option("--dev-scales", dev_scales)->delimiter(',');

  auto* reproduce = app.add_subcommand("reproduce", "reference tables and figures");
  reproduce->fallthrough();
  std::string target;
  int bins = 400;
  reproduce->add_option("target", target)->required();
  reproduce->add_option("--bins", bins);

  CLI11_PARSE(app, argc, argv);

  try {
    mft::ModelParams params{x0, sigma, c, parse_time(T_str), floor};
    if (solve_hom->parsed()) {
      if (preset == "table1") {
        params = {1.0, 0.25, 1.0, parse_time(T_str), 0.0};
        return cmd_solve_hom(params, table1_reward(), out_dir);
      }
      return cmd_solve_hom(params, parse_reward(reward_spec), out_dir);
    }
    if (solve_het->parsed()) {
      mft::HetEquilibrium eq;
      if (het_case >= 0) {
        if (het_case >= int(std::size(kTable2)))
          throw std::invalid_argument("case index out of range");
        eq = solve_table2_case(kTable2[het_case], het_bins);
      } else {
        if (het_config.empty())
          throw std::invalid_argument("solve-het needs --config or --case");
        std::ifstream in(het_config);
        if (!in)
          throw std::invalid_argument("cannot read config " + het_config);
        json cfg = json::parse(in);
        auto mix = mft::mix_from_json(cfg.at("mix"));
        auto reward = mft::reward_from_json(cfg.at("reward"));
        const auto* step = std::get_if<mft::RankRewardStep>(&reward);
        if (!step)
          throw std::invalid_argument("solve-het needs a step reward");
        double T = cfg.contains("horizon")
                       ? (cfg.at("horizon").is_string()
                              ? parse_time(cfg.at("horizon").get<std::string>())
                              : cfg.at("horizon").get<double>())
                       : kInf;
        eq = mft::solve_het(mix, *step, T);
      }
      mft::write_file(out_dir + "/het.json", mft::to_json(eq).dump(2) + "\n");
      std::printf("beta=%s welfare=%s\n", mft::format_double(eq.beta).c_str(),
                  mft::format_double(eq.welfare).c_str());
      return 0;
    }
    if (design->parsed())
      return cmd_design(problem, params, K, alpha, g_path, out_dir);
    if (simulate->parsed()) {
      sim_cfg.deviations.clear();
      for (double s : dev_scales)
        sim_cfg.deviations.push_back(
            {mft::DeviationStrategy::Kind::Scale, s});
      return cmd_simulate(params, parse_reward(reward_spec), sim_cfg, sweep,
                          zero_effort, out_dir);
    }
    if (reproduce->parsed()) {
      if (target == "table1") return cmd_reproduce_table1(out_dir);
      if (target == "table2") return cmd_reproduce_table2(out_dir, bins);
      if (target == "fig3") return cmd_reproduce_fig3(out_dir);
      if (target == "fig4") return cmd_reproduce_fig4(out_dir);
      if (target == "fig5") return cmd_reproduce_fig5(out_dir);
      if (target == "fig6") return cmd_reproduce_fig6(out_dir);
      throw std::invalid_argument("unknown reproduce target \"" + target +
                                  "\"");
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
