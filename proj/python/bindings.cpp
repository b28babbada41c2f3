#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mft/design.hpp"
#include "mft/equilibrium_het.hpp"
#include "mft/equilibrium_hom.hpp"
#include "mft/fpt.hpp"
#include "mft/nplayer_sim.hpp"
#include "mft/pie.hpp"
#include "mft/serialize.hpp"

namespace py = pybind11;
using namespace mft;

PYBIND11_MODULE(_mft, mod) {
  mod.doc() = "mean-field tournament solvers";

  py::class_<ModelParams>(mod, "ModelParams")
      .def(py::init([](double x0, double sigma, double c, double horizon,
                       double floor) {
             ModelParams p{x0, sigma, c, horizon, floor};
             p.validate();
             return p;
           }),
           py::arg("x0") = 1.0, py::arg("sigma") = 0.25, py::arg("c") = 1.0,
           py::arg("horizon") = 1.0, py::arg("floor") = 0.0)
      .def_readwrite("x0", &ModelParams::x0)
      .def_readwrite("sigma", &ModelParams::sigma)
      .def_readwrite("c", &ModelParams::c)
      .def_readwrite("horizon", &ModelParams::horizon)
      .def_readwrite("floor", &ModelParams::floor)
      .def("reward_scale", &ModelParams::reward_scale);

  py::class_<RankRewardStep>(mod, "RankRewardStep")
      .def_readonly("thresholds", &RankRewardStep::thresholds)
      .def_readonly("levels", &RankRewardStep::levels)
      .def_readonly("floor", &RankRewardStep::floor)
      .def("eval", &RankRewardStep::eval)
      .def("budget", &RankRewardStep::budget);
  py::class_<RankRewardSmooth>(mod, "RankRewardSmooth")
      .def_readonly("grid", &RankRewardSmooth::grid)
      .def_readonly("values", &RankRewardSmooth::values)
      .def_readonly("floor", &RankRewardSmooth::floor)
      .def("eval", &RankRewardSmooth::eval)
      .def("budget", &RankRewardSmooth::budget);

  mod.def(
      "step_reward",
      [](std::vector<double> thresholds, std::vector<double> levels,
         double floor) {
        RankRewardStep r{std::move(thresholds), std::move(levels), floor};
        r.validate();
        return r;
      },
      py::arg("thresholds"), py::arg("levels"), py::arg("floor") = 0.0);
  mod.def(
      "smooth_reward",
      [](const std::function<double(double)>& H, int points, double floor) {
        return make_smooth_reward(H, points, floor);
      },
      py::arg("H"), py::arg("points") = 2000, py::arg("floor") = 0.0);

  py::class_<HomEquilibrium>(mod, "HomEquilibrium")
      .def_property_readonly("beta", &HomEquilibrium::beta)
      .def_property_readonly("value", &HomEquilibrium::value)
      .def("quantile", &HomEquilibrium::quantile)
      .def("cdf", &HomEquilibrium::cdf)
      .def("density", &HomEquilibrium::density)
      .def("effort",
           [](const HomEquilibrium& eq, double t, double x) {
             return effort_field(eq, t, x);
           })
      .def("to_json",
           [](const HomEquilibrium& eq) { return to_json(eq).dump(2); });
  mod.def("solve_hom", &solve_hom, py::arg("params"), py::arg("reward"));

  py::class_<HetEquilibrium>(mod, "HetEquilibrium")
      .def_readonly("beta", &HetEquilibrium::beta)
      .def_readonly("welfare", &HetEquilibrium::welfare)
      .def_readonly("type_beta", &HetEquilibrium::type_beta)
      .def_readonly("type_value", &HetEquilibrium::type_value)
      .def_readonly("quantiles", &HetEquilibrium::quantiles)
      .def_readonly("max_residual", &HetEquilibrium::max_residual)
      .def("to_json",
           [](const HetEquilibrium& eq) { return to_json(eq).dump(2); });
  mod.def(
      "solve_het",
      [](const std::vector<std::tuple<double, double, double>>& atoms,
         double sigma, const RankReward& reward, double T) {
        PopulationMix mix;
        mix.sigma = sigma;
        for (const auto& [x0, c, w] : atoms) mix.atoms.push_back({x0, c, w});
        return solve_het(mix, std::get<RankRewardStep>(reward), T);
      },
      py::arg("atoms"), py::arg("sigma"), py::arg("reward"), py::arg("T"));

  py::class_<DesignSolution>(mod, "DesignSolution")
      .def_readonly("reward", &DesignSolution::reward)
      .def_readonly("objective", &DesignSolution::objective)
      .def_readonly("feasible", &DesignSolution::feasible)
      .def_readonly("t_star", &DesignSolution::t_star)
      .def_readonly("alpha_max", &DesignSolution::alpha_max);
  mod.def("min_quantile_reward", &min_quantile_reward, py::arg("params"),
          py::arg("budget"), py::arg("alpha"));
  mod.def("min_budget", &min_budget, py::arg("params"), py::arg("alpha"));
  mod.def("max_completion_rate", &max_completion_rate, py::arg("params"),
          py::arg("budget"));
  mod.def("max_welfare_reward", &max_welfare_reward, py::arg("params"),
          py::arg("budget"));

  mod.def(
      "pie_equilibria",
      [](const ModelParams& params,
         const std::function<double(double, double)>& H,
         const std::function<double(double)>& R_inf) {
        auto set = enumerate_pie_equilibria(params, PieReward{H, R_inf});
        return py::make_tuple(set.roots, set.values, set.dominant);
      },
      py::arg("params"), py::arg("H"), py::arg("R_inf"));
  mod.def(
      "pie_critical_thresholds",
      [](const ModelParams& params,
         const std::function<double(double, double)>& H,
         const std::function<double(double)>& R_inf) {
        return pie_critical_thresholds(params, PieReward{H, R_inf});
      },
      py::arg("params"), py::arg("H"), py::arg("R_inf"));

  mod.def(
      "simulate",
      [](const HomEquilibrium& eq, int N, double dt, unsigned long long seed,
         int replications, const std::vector<double>& scale_deviations) {
        SimConfig cfg;
        cfg.N = N;
        cfg.dt = dt;
        cfg.seed = seed;
        cfg.replications = replications;
        for (double lam : scale_deviations)
          cfg.deviations.push_back({DeviationStrategy::Kind::Scale, lam});
        auto rep = simulate_nplayer(eq, cfg);
        return to_json(rep).dump(2);
      },
      py::arg("eq"), py::arg("N") = 256, py::arg("dt") = 1e-3,
      py::arg("seed") = 1, py::arg("replications") = 4,
      py::arg("scale_deviations") = std::vector<double>{},
      py::call_guard<py::gil_scoped_release>());

  mod.def("fpt_cdf", [](double y, double t) { return fpt_cdf(FptLaw(y), t); },
          py::arg("scaled_distance"), py::arg("t"));
  mod.def("fpt_quantile",
          [](double y, double p) { return fpt_quantile(FptLaw(y), p); },
          py::arg("scaled_distance"), py::arg("p"));
}
