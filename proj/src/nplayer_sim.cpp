#include "mft/nplayer_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace mft {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t rep,
                         std::uint64_t player) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= rep * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t b = splitmix64(s);
  s ^= player * 0x9e3779b97f4a7c15ULL + 0x165667b19e3779f9ULL;
  std::uint64_t c = splitmix64(s);
  return std::mt19937_64(a ^ (b << 1) ^ (c << 2));
}

// Feedback effort sampled on a [0,T] x [0,xmax] grid, quadratically refined
// near the absorbing boundary, bilinear in the transformed coordinates.
struct EffortGrid {
  double T = 0.0;
  double xmax = 0.0;
  int nt = 0;
  int nx = 0;
  std::vector<double> v;

  template <typename F>
  void build(double horizon, double x_max, int n_t, int n_x, F&& effort) {
    T = horizon;
    xmax = x_max;
    nt = n_t;
    nx = n_x;
    v.assign(static_cast<std::size_t>(nt) * nx, 0.0);
    for (int i = 0; i < nt; ++i) {
      double t = T * i / (nt - 1);
      if (i == nt - 1) t = T * (1.0 - 1e-12);
      for (int j = 0; j < nx; ++j) {
        double s = static_cast<double>(j) / (nx - 1);
        double x = xmax * s * s;
        v[static_cast<std::size_t>(i) * nx + j] =
            x > 0.0 ? effort(t, x) : effort(t, 1e-12 * xmax);
      }
    }
  }

  double eval(double t, double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= xmax) x = xmax;
    if (t <= 0.0) t = 0.0;
    if (t >= T) t = T;
    double ti = t / T * (nt - 1);
    double xi = std::sqrt(x / xmax) * (nx - 1);
    int i = std::min(static_cast<int>(ti), nt - 2);
    int j = std::min(static_cast<int>(xi), nx - 2);
    double ft = ti - i;
    double fx = xi - j;
    const double* row = v.data() + static_cast<std::size_t>(i) * nx;
    const double* row2 = row + nx;
    return (1 - ft) * ((1 - fx) * row[j] + fx * row[j + 1]) +
           ft * ((1 - fx) * row2[j] + fx * row2[j + 1]);
  }
};

struct PlayerSpec {
  int type;
  double x0;
  double c;
};

struct PathResult {
  double tau;   // completion time, inf if still running at T
  double cost;  // integrated quadratic effort cost
};

struct SimProblem {
  double sigma;
  double T;
  double dt;
  bool bridge;
  std::vector<PlayerSpec> players;
  std::vector<EffortGrid> grids;
  RankReward reward;
};

template <typename EffortFn>
PathResult run_path(std::mt19937_64& rng, const SimProblem& pb,
                    const PlayerSpec& pl, EffortFn&& effort) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double sdt = pb.sigma * std::sqrt(pb.dt);
  const double bridge_scale = 2.0 / (pb.sigma * pb.sigma * pb.dt);
  double x = pl.x0;
  double cost = 0.0;
  double t = 0.0;
  const long steps = static_cast<long>(std::ceil(pb.T / pb.dt - 1e-9));
  for (long k = 0; k < steps; ++k) {
    double a = effort(t, x);
    double z = gauss(rng);
    double u = unif(rng);
    double xn = x - a * pb.dt + sdt * z;
    cost += pl.c * a * a * pb.dt;
    t = (k + 1) * pb.dt;
    if (xn <= 0.0) return {std::min(t, pb.T), cost};
    if (pb.bridge && u < std::exp(-bridge_scale * x * xn))
      return {std::min(t, pb.T), cost};
    x = xn;
  }
  return {kInf, cost};
}

void parallel_for(int n, int nthreads, const std::function<void(int, int)>& body) {
  if (nthreads <= 1 || n < 2 * nthreads) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (n + nthreads - 1) / nthreads;
  for (int k = 0; k < nthreads; ++k) {
    int lo = k * chunk;
    int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(body, lo, hi);
  }
  for (auto& t : pool) t.join();
}

// Rank payoff for one player given everybody's sorted (tau, index) keys.
double payoff_of(const SimProblem& pb,
                 const std::vector<std::pair<double, int>>& sorted,
                 std::pair<double, int> original, double tau, int index,
                 double cost) {
  if (!std::isfinite(tau)) return reward_floor(pb.reward) - cost;
  std::pair<double, int> key{tau, index};
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
  long less = it - sorted.begin();
  if (original < key) --less;  // the player's own stale entry
  double r = static_cast<double>(less + 1) / static_cast<double>(pb.players.size());
  return eval_reward(pb.reward, r) - cost;
}

SimReport run_sim(const SimProblem& pb, const SimConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(pb.T))
    throw std::invalid_argument("simulation requires a finite horizon");
  for (const auto& pl : pb.players) {
    double a0 = pb.grids[pl.type].eval(0.0, pl.x0);
    if (std::abs(a0) * cfg.dt > pl.x0 / 10.0)
      throw std::invalid_argument(
          "dt too large: first Euler step moves more than x0/10");
  }

  const int N = static_cast<int>(pb.players.size());
  const int R = cfg.replications;
  const int nthreads = max_threads();
  const std::size_t nd = cfg.deviations.size();

  std::vector<double> rep_beta(R), rep_payoff(R);
  std::vector<std::vector<double>> rep_gain(nd, std::vector<double>(R, 0.0));
  std::vector<double> last_times;

  std::vector<double> tau(N), cost(N), pay(N);
  for (int rep = 0; rep < R; ++rep) {
    parallel_for(N, nthreads, [&](int lo, int hi) {
      for (int p = lo; p < hi; ++p) {
        const auto& pl = pb.players[p];
        const EffortGrid& g = pb.grids[pl.type];
        auto rng = make_rng(cfg.seed, rep, p);
        PathResult r = run_path(rng, pb, pl,
                                [&](double t, double x) { return g.eval(t, x); });
        tau[p] = r.tau;
        cost[p] = r.cost;
      }
    });

    std::vector<std::pair<double, int>> sorted(N);
    for (int p = 0; p < N; ++p) sorted[p] = {tau[p], p};
    std::sort(sorted.begin(), sorted.end());

    double finished = 0.0, total = 0.0;
    for (int p = 0; p < N; ++p) {
      pay[p] = payoff_of(pb, sorted, {tau[p], p}, tau[p], p, cost[p]);
      total += pay[p];
      if (std::isfinite(tau[p])) finished += 1.0;
    }
    rep_beta[rep] = finished / N;
    rep_payoff[rep] = total / N;

    for (std::size_t d = 0; d < nd; ++d) {
      const DeviationStrategy dev = cfg.deviations[d];
      std::vector<double> gain(N);
      parallel_for(N, nthreads, [&](int lo, int hi) {
        for (int p = lo; p < hi; ++p) {
          const auto& pl = pb.players[p];
          const EffortGrid& g = pb.grids[pl.type];
          auto rng = make_rng(cfg.seed, rep, p);  // common random numbers
          PathResult r;
          switch (dev.kind) {
            case DeviationStrategy::Kind::Scale:
              r = run_path(rng, pb, pl, [&](double t, double x) {
                return dev.param * g.eval(t, x);
              });
              break;
            case DeviationStrategy::Kind::Zero:
              r = run_path(rng, pb, pl, [](double, double) { return 0.0; });
              break;
            case DeviationStrategy::Kind::Constant:
              r = run_path(rng, pb, pl,
                           [&](double, double) { return dev.param; });
              break;
          }
          gain[p] =
              payoff_of(pb, sorted, {tau[p], p}, r.tau, p, r.cost) - pay[p];
        }
      });
      double s = 0.0;
      for (double gp : gain) s += gp;
      rep_gain[d][rep] = s / N;
    }

    if (rep == R - 1) {
      last_times.clear();
      for (int p = 0; p < N; ++p)
        if (std::isfinite(tau[p])) last_times.push_back(tau[p]);
      std::sort(last_times.begin(), last_times.end());
    }
  }

  auto mean_se = [R](const std::vector<double>& x) {
    double m = 0.0;
    for (double xi : x) m += xi;
    m /= R;
    double v = 0.0;
    for (double xi : x) v += (xi - m) * (xi - m);
    double se = R > 1 ? std::sqrt(v / (R - 1) / R) : 0.0;
    return std::pair<double, double>{m, se};
  };

  SimReport rep;
  rep.N = N;
  rep.dt = cfg.dt;
  rep.seed = cfg.seed;
  rep.replications = R;
  std::tie(rep.beta_hat, rep.beta_se) = mean_se(rep_beta);
  std::tie(rep.mean_payoff, rep.payoff_se) = mean_se(rep_payoff);
  for (std::size_t d = 0; d < nd; ++d) {
    auto [m, se] = mean_se(rep_gain[d]);
    rep.deviation_gains.push_back({cfg.deviations[d], m, se});
  }
  rep.completion_times = std::move(last_times);
  return rep;
}

constexpr int kGridT = 257;
constexpr int kGridX = 257;

// Step rewards: exact finite sums over the precomputed rank-crossing times.
void build_grid_step(const HomEquilibrium& eq, double xmax, EffortGrid& g) {
  const ModelParams& p = eq.params();
  const double m = p.reward_scale();
  const double T = p.horizon;
  const auto& step = std::get<RankRewardStep>(eq.reward());
  const std::size_t n = step.levels.size();
  std::vector<double> edge(n), lev(n);
  for (std::size_t k = 0; k < n; ++k) {
    lev[k] = std::exp(step.levels[k] / m);
    if (k + 1 < n) {
      auto q = eq.quantile(step.thresholds[k]);
      edge[k] = q ? std::min(*q, T) : T;
    } else {
      edge[k] = T;
    }
  }
  const double fl = std::exp(p.floor / m);
  g.build(T, xmax, kGridT, kGridX, [&](double t, double x) {
    FptLaw lawx(x / p.sigma);
    double u = 0.0, ux = 0.0, prevF = 0.0, prevD = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double s = edge[k] - t;
      const double F = s > 0.0 ? fpt_cdf(lawx, s) : 0.0;
      const double D = s > 0.0 ? fpt_cdf_dx(x, p.sigma, s) : 0.0;
      u += lev[k] * (F - prevF);
      ux += lev[k] * (D - prevD);
      prevF = F;
      prevD = D;
    }
    u += fl * (1.0 - prevF);
    ux -= fl * prevD;
    return -p.sigma * p.sigma * ux / u;
  });
}

// Smooth rewards: one backward Crank-Nicolson sweep of the transformed
// value equation u_t + sigma^2/2 u_xx = 0 on a boundary-refined grid, with
// implicit-Euler startup to damp the terminal/boundary corner.
void build_grid_smooth(const HomEquilibrium& eq, double xmax, EffortGrid& g,
                       int nt = 4097, int nx = 2049) {
  const ModelParams& p = eq.params();
  const double m = p.reward_scale();
  const double T = p.horizon;
  g.T = T;
  g.xmax = xmax;
  g.nt = nt;
  g.nx = nx;
  g.v.assign(static_cast<std::size_t>(nt) * nx, 0.0);

  std::vector<double> x(nx), h(nx - 1);
  for (int j = 0; j < nx; ++j) {
    double s = static_cast<double>(j) / (nx - 1);
    x[j] = xmax * s * s;
  }
  for (int j = 0; j + 1 < nx; ++j) h[j] = x[j + 1] - x[j];

  auto bval = [&](double t) {
    return std::exp(eval_reward(eq.reward(), eq.cdf(t)) / m);
  };
  auto apply_A = [&](const std::vector<double>& u, std::vector<double>& Au) {
    for (int j = 1; j + 1 < nx; ++j)
      Au[j] = 2.0 / (h[j - 1] + h[j]) *
              ((u[j + 1] - u[j]) / h[j] - (u[j] - u[j - 1]) / h[j - 1]);
    Au[0] = 0.0;
    Au[nx - 1] = 2.0 * (u[nx - 2] - u[nx - 1]) / (h[nx - 2] * h[nx - 2]);
  };
  auto store_row = [&](int k, const std::vector<double>& u) {
    double* row = g.v.data() + static_cast<std::size_t>(k) * nx;
    const double s2 = p.sigma * p.sigma;
    row[0] = -s2 * (u[1] - u[0]) / (h[0] * u[0]);
    for (int j = 1; j + 1 < nx; ++j) {
      const double hl = h[j - 1], hr = h[j];
      const double ux = (u[j + 1] * hl * hl - u[j - 1] * hr * hr +
                         u[j] * (hr * hr - hl * hl)) /
                        (hl * hr * (hl + hr));
      row[j] = -s2 * ux / u[j];
    }
    row[nx - 1] = -s2 * (u[nx - 1] - u[nx - 2]) / (h[nx - 2] * u[nx - 1]);
  };

  const double dt = T / (nt - 1);
  const double lam = 0.5 * p.sigma * p.sigma * dt;
  std::vector<double> u(nx, std::exp(p.floor / m)), rhs(nx), Au(nx);
  std::vector<double> dl(nx), dm(nx), du(nx);
  u[0] = bval(T);
  store_row(nt - 1, u);

  for (int k = nt - 2; k >= 0; --k) {
    const double theta = (nt - 2 - k) < 8 ? 1.0 : 0.5;  // damped startup
    apply_A(u, Au);
    for (int j = 0; j < nx; ++j) rhs[j] = u[j] + (1.0 - theta) * lam * Au[j];
    const double t = dt * k;
    rhs[0] = bval(t);
    dm[0] = 1.0;
    du[0] = 0.0;
    for (int j = 1; j + 1 < nx; ++j) {
      const double wl = 2.0 / ((h[j - 1] + h[j]) * h[j - 1]);
      const double wr = 2.0 / ((h[j - 1] + h[j]) * h[j]);
      dl[j] = -theta * lam * wl;
      dm[j] = 1.0 + theta * lam * (wl + wr);
      du[j] = -theta * lam * wr;
    }
    {
      const double w = 2.0 / (h[nx - 2] * h[nx - 2]);
      dl[nx - 1] = -theta * lam * w;
      dm[nx - 1] = 1.0 + theta * lam * w;
    }
    for (int j = 1; j < nx; ++j) {  // Thomas elimination
      const double f = dl[j] / dm[j - 1];
      dm[j] -= f * du[j - 1];
      rhs[j] -= f * rhs[j - 1];
    }
    u[nx - 1] = rhs[nx - 1] / dm[nx - 1];
    for (int j = nx - 2; j >= 0; --j)
      u[j] = (rhs[j] - du[j] * u[j + 1]) / dm[j];
    store_row(k, u);
  }
}

}  // namespace

void SimConfig::validate() const {
  if (N < 2) throw std::invalid_argument("simulation needs at least 2 players");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (replications < 1)
    throw std::invalid_argument("replications must be positive");
  for (const auto& dev : deviations)
    if (!std::isfinite(dev.param))
      throw std::invalid_argument("deviation parameter must be finite");
}

SimReport simulate_nplayer(const HomEquilibrium& eq, const SimConfig& cfg) {
  const ModelParams& mp = eq.params();
  SimProblem pb;
  pb.sigma = mp.sigma;
  pb.T = mp.horizon;
  pb.dt = cfg.dt;
  pb.bridge = cfg.bridge_absorption;
  pb.reward = eq.reward();
  pb.players.assign(cfg.N, {0, mp.x0, mp.c});
  pb.grids.resize(1);
  double xmax = mp.x0 + 6.0 * mp.sigma * std::sqrt(mp.horizon);
  if (std::holds_alternative<RankRewardStep>(eq.reward())) {
    build_grid_step(eq, xmax, pb.grids[0]);
  } else {
    build_grid_smooth(eq, xmax, pb.grids[0]);
  }
  return run_sim(pb, cfg);
}

SimReport simulate_nplayer(const HetEquilibrium& eq, const SimConfig& cfg) {
  SimProblem pb;
  pb.sigma = eq.mix.sigma;
  pb.T = eq.horizon;
  pb.dt = cfg.dt;
  pb.bridge = cfg.bridge_absorption;
  pb.reward = eq.reward;

  const auto& atoms = eq.mix.atoms;
  const int K = static_cast<int>(atoms.size());
  // Deterministic type assignment proportional to the mixture weights.
  double acc = 0.0;
  std::vector<int> counts(K, 0);
  int assigned = 0;
  for (int i = 0; i < K; ++i) {
    acc += atoms[i].weight;
    int upto = i + 1 == K ? cfg.N
                          : static_cast<int>(std::lround(acc * cfg.N));
    counts[i] = std::max(0, upto - assigned);
    assigned += counts[i];
  }
  for (int i = 0; i < K; ++i)
    for (int k = 0; k < counts[i]; ++k)
      pb.players.push_back({i, atoms[i].x0, atoms[i].c});

  pb.grids.resize(K);
  for (int i = 0; i < K; ++i) {
    double xmax = atoms[i].x0 + 6.0 * eq.mix.sigma * std::sqrt(eq.horizon);
    pb.grids[i].build(eq.horizon, xmax, kGridT, kGridX, [&](double t, double x) {
      return het_effort_field(eq, i, t, x);
    });
  }
  return run_sim(pb, cfg);
}

GainEstimate estimate_deviation_gain(const HomEquilibrium& eq,
                                     const SimConfig& cfg,
                                     const DeviationStrategy& dev) {
  SimConfig one = cfg;
  one.deviations = {dev};
  return simulate_nplayer(eq, one).deviation_gains.front();
}

int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("MFT_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

}  // namespace mft
