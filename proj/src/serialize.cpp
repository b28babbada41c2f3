#include "mft/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <variant>

namespace mft {
namespace {

json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double as_num(const json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("expected a number, got \"" + s + "\"");
  }
  return j.get<double>();
}

json opt(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const ModelParams& p) {
  json j;
  j["x0"] = p.x0;
  j["sigma"] = p.sigma;
  j["c"] = p.c;
  j["horizon"] = num(p.horizon);
  j["floor"] = p.floor;
  return j;
}

json to_json(const RankReward& reward) {
  json j;
  if (const auto* step = std::get_if<RankRewardStep>(&reward)) {
    j["kind"] = "step";
    j["thresholds"] = step->thresholds;
    j["levels"] = step->levels;
    j["floor"] = step->floor;
  } else {
    const auto& smooth = std::get<RankRewardSmooth>(reward);
    j["kind"] = "smooth";
    j["grid"] = smooth.grid;
    j["values"] = smooth.values;
    j["floor"] = smooth.floor;
  }
  return j;
}

json to_json(const HomEquilibrium& eq) {
  json j;
  j["params"] = to_json(eq.params());
  j["beta"] = eq.beta();
  j["value"] = eq.value();
  j["fpt_horizon_mass"] = eq.fpt_horizon_mass();
  json q;
  for (double r : {0.25, 0.5, 0.75}) {
    auto t = eq.quantile(r);
    q.push_back(t ? json(*t) : json(nullptr));
  }
  j["quartiles"] = q;
  return j;
}

json to_json(const HetEquilibrium& eq) {
  json j;
  json atoms = json::array();
  for (const auto& a : eq.mix.atoms)
    atoms.push_back({{"x0", a.x0}, {"c", a.c}, {"weight", a.weight}});
  j["mix"] = {{"atoms", atoms}, {"sigma", eq.mix.sigma}};
  j["horizon"] = num(eq.horizon);
  j["beta"] = eq.beta;
  j["welfare"] = eq.welfare;
  j["k0"] = eq.k0;
  j["all_unfinished"] = eq.all_unfinished;
  j["type_beta"] = eq.type_beta;
  j["type_value"] = eq.type_value;
  j["quantiles"] = eq.quantiles;
  j["max_residual"] = eq.max_residual;
  return j;
}

json to_json(const DesignSolution& sol) {
  json j;
  j["objective"] = sol.objective;
  j["feasible"] = sol.feasible;
  j["t_star"] = opt(sol.t_star);
  j["alpha_max"] = opt(sol.alpha_max);
  j["z_star"] = opt(sol.z_star);
  j["bonus_deadline"] = opt(sol.bonus_deadline);
  j["b_star"] = opt(sol.b_star);
  j["z_candidates"] = sol.z_candidates;
  j["reward"] = to_json(sol.reward);
  return j;
}

json to_json(const PieEquilibriumSet& set) {
  json j;
  j["roots"] = set.roots;
  j["values"] = set.values;
  j["efforts"] = set.efforts;
  j["multiplicity"] = set.multiplicity;
  j["dominant"] = set.dominant;
  j["grid_warning"] = set.grid_warning;
  return j;
}

json to_json(const SimReport& report) {
  json j;
  j["N"] = report.N;
  j["dt"] = report.dt;
  j["seed"] = report.seed;
  j["replications"] = report.replications;
  j["beta_hat"] = report.beta_hat;
  j["beta_se"] = report.beta_se;
  j["mean_payoff"] = report.mean_payoff;
  j["payoff_se"] = report.payoff_se;
  json gains = json::array();
  for (const auto& g : report.deviation_gains) {
    const char* kind = g.deviation.kind == DeviationStrategy::Kind::Scale
                           ? "scale"
                           : g.deviation.kind == DeviationStrategy::Kind::Zero
                                 ? "zero"
                                 : "constant";
    gains.push_back({{"kind", kind},
                     {"param", g.deviation.param},
                     {"gain", g.gain},
                     {"se", g.se}});
  }
  j["deviation_gains"] = gains;
  j["completion_times"] = report.completion_times;
  return j;
}

ModelParams model_params_from_json(const json& j) {
  ModelParams p;
  p.x0 = as_num(j.at("x0"));
  p.sigma = as_num(j.at("sigma"));
  p.c = as_num(j.at("c"));
  p.horizon = as_num(j.at("horizon"));
  p.floor = j.contains("floor") ? as_num(j.at("floor")) : 0.0;
  p.validate();
  return p;
}

RankReward reward_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double floor = j.contains("floor") ? as_num(j.at("floor")) : 0.0;
  if (kind == "step") {
    RankRewardStep step;
    step.thresholds = j.at("thresholds").get<std::vector<double>>();
    step.levels = j.at("levels").get<std::vector<double>>();
    step.floor = floor;
    step.validate();
    return step;
  }
  if (kind == "smooth") {
    RankRewardSmooth smooth;
    smooth.grid = j.at("grid").get<std::vector<double>>();
    smooth.values = j.at("values").get<std::vector<double>>();
    smooth.floor = floor;
    smooth.validate();
    return smooth;
  }
  if (kind == "quadratic") {
    // scale * (1 - r)^2, the workhorse family.
    const double scale = as_num(j.at("scale"));
    const int points = j.contains("points") ? j.at("points").get<int>() : 2000;
    return make_smooth_reward(
        [scale](double r) { return scale * (1.0 - r) * (1.0 - r); }, points,
        floor);
  }
  if (kind == "constant") {
    RankRewardStep step;
    step.levels = {as_num(j.at("level"))};
    step.floor = floor;
    step.validate();
    return step;
  }
  throw std::invalid_argument("unknown reward kind \"" + kind + "\"");
}

PopulationMix mix_from_json(const json& j) {
  PopulationMix mix;
  mix.sigma = as_num(j.at("sigma"));
  for (const auto& a : j.at("atoms")) {
    mix.atoms.push_back(
        {as_num(a.at("x0")), as_num(a.at("c")), as_num(a.at("weight"))});
  }
  mix.validate();
  return mix;
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace mft
