#include "mft/equilibrium_het.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mft/equilibrium_hom.hpp"
#include "mft/fpt.hpp"

namespace mft {
namespace {

// Per-type constants with rewards rescaled by exp(-R_1 / m_i) to keep the
// exponentials in (0, 1].
struct TypeData {
  double weight;
  double y;  // x0 / sigma
  double m;  // 2 c sigma^2
  std::vector<double> E;  // exp((R_k - R_1)/m), k = 1..d+1
  double E_inf;
  double F_T;  // horizon mass of the uncontrolled law
};

std::vector<TypeData> make_types(const PopulationMix& mix,
                                 const RankRewardStep& reward, double T) {
  std::vector<TypeData> types;
  types.reserve(mix.atoms.size());
  const double R1 = reward.levels.front();
  for (const auto& a : mix.atoms) {
    TypeData td;
    td.weight = a.weight;
    td.y = a.x0 / mix.sigma;
    td.m = 2.0 * a.c * mix.sigma * mix.sigma;
    for (double R : reward.levels) td.E.push_back(std::exp((R - R1) / td.m));
    td.E_inf = std::exp((reward.floor - R1) / td.m);
    td.F_T = std::isinf(T) ? 1.0 : fpt_cdf(FptLaw(td.y), T);
    types.push_back(td);
  }
  return types;
}

// State of one forward solve of the quantile system at fixed per-type
// normalizations u.
struct March {
  std::vector<double> times;            // solved quantile times, capped at T
  std::vector<std::vector<double>> F;   // [type][k], F_i at time k (k=0: 0)
  std::vector<bool> capped;
};

class System {
 public:
  System(const std::vector<TypeData>& types, const RankRewardStep& reward,
         double T)
      : types_(types), ranks_(reward.thresholds), T_(T) {
    t_cap_ = std::isinf(T) ? 0.0 : T;
    if (std::isinf(T)) {
      for (const auto& td : types_) {
        t_cap_ = std::max(t_cap_, fpt_quantile(FptLaw(td.y), 1.0 - 1e-13));
      }
    }
  }

  int d() const { return int(ranks_.size()); }

  // Solve each rank equation for its time given the previous one; a rank
  // unreachable under u pins to the deadline (which reproduces the correct
  // tail of the normalization identity).
  March march(const std::vector<double>& u) const {
    const std::size_t n = types_.size();
    March s;
    s.F.assign(n, std::vector<double>(d() + 1, 0.0));
    s.times.assign(d(), 0.0);
    s.capped.assign(d(), false);
    double t_prev = 0.0;
    for (int k = 1; k <= d(); ++k) {
      const double gap = ranks_[k - 1] - (k >= 2 ? ranks_[k - 2] : 0.0);
      auto lhs = [&](double t) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += types_[i].weight * types_[i].E[k - 1] *
                 (fpt_cdf(FptLaw(types_[i].y), t) - s.F[i][k - 1]) / u[i];
        }
        return acc;
      };
      double t_k;
      if (lhs(t_cap_) < gap) {
        t_k = t_cap_;
        s.capped[k - 1] = true;
      } else {
        double lo = t_prev, hi = t_cap_;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          (lhs(mid) < gap ? lo : hi) = mid;
        }
        t_k = 0.5 * (lo + hi);
      }
      s.times[k - 1] = t_k;
      for (std::size_t i = 0; i < n; ++i) {
        s.F[i][k] = fpt_cdf(FptLaw(types_[i].y), t_k);
      }
      t_prev = t_k;
    }
    return s;
  }

  std::vector<double> implied_u(const March& s) const {
    std::vector<double> u(types_.size());
    for (std::size_t i = 0; i < types_.size(); ++i) {
      const TypeData& td = types_[i];
      double acc = 0.0;
      for (int k = 1; k <= d(); ++k) {
        acc += td.E[k - 1] * (s.F[i][k] - s.F[i][k - 1]);
      }
      acc += td.E.back() * (td.F_T - s.F[i][d()]);
      acc += td.E_inf * (1.0 - td.F_T);
      u[i] = acc;
    }
    return u;
  }

  double residual(const March& s, const std::vector<double>& u, int k) const {
    const double gap = ranks_[k - 1] - (k >= 2 ? ranks_[k - 2] : 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < types_.size(); ++i) {
      acc += types_[i].weight * types_[i].E[k - 1] *
             (s.F[i][k] - s.F[i][k - 1]) / u[i];
    }
    return acc - gap;
  }

 private:
  const std::vector<TypeData>& types_;
  std::vector<double> ranks_;
  double T_;
  double t_cap_;
};

// Solves a small dense linear system in place.
void solve_linear(std::vector<std::vector<double>>& A, std::vector<double>& b) {
  const int n = int(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    }
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    if (A[col][col] == 0.0) throw std::runtime_error("singular jacobian");
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int i = 0; i < n; ++i) b[i] /= A[i][i];
}

}  // namespace

void PopulationMix::validate() const {
  if (atoms.empty()) throw std::invalid_argument("empty mixture");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!(a.x0 > 0.0) || !(a.c > 0.0) || !(a.weight > 0.0)) {
      throw std::invalid_argument("atom fields must be positive");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must sum to 1");
  }
}

double compute_A_T(const PopulationMix& mix, const RankRewardStep& reward,
                   double T) {
  mix.validate();
  reward.validate();
  if (std::isinf(T)) throw std::domain_error("needs a finite horizon");
  const auto types = make_types(mix, reward, T);
  double acc = 0.0;
  for (const auto& td : types) {
    acc += td.weight * td.F_T / (td.F_T + td.E_inf * (1.0 - td.F_T));
  }
  return acc;
}

HetEquilibrium solve_het(const PopulationMix& mix,
                         const RankRewardStep& reward, double T) {
  mix.validate();
  reward.validate();
  if (reward.thresholds.empty()) {
    throw std::invalid_argument("need at least one rank threshold");
  }
  if (!(T > 0.0)) throw std::domain_error("horizon must be positive");

  HetEquilibrium eq;
  eq.mix = mix;
  eq.reward = reward;
  eq.horizon = T;
  const auto types = make_types(mix, reward, T);
  const double R1 = reward.levels.front();
  const int n = int(types.size());
  System sys(types, reward, T);

  auto finish = [&](const March& s, const std::vector<double>& u) {
    int k0 = 0;
    double res = 0.0;
    for (int k = 1; k <= sys.d(); ++k) {
      if (s.capped[k - 1]) break;
      res = std::max(res, std::abs(sys.residual(s, u, k)));
      k0 = k;
    }
    eq.k0 = k0;
    eq.quantiles.assign(s.times.begin(), s.times.begin() + k0);
    eq.max_residual = res;
#ifdef MFT_HET_TRACE
    for (int i = 0; i < n; ++i) fprintf(stderr, "u[%d]=%.6e\n", i, u[i]);
    for (int k = 1; k <= sys.d(); ++k) {
      fprintf(stderr, "k=%d t=%.9f capped=%d F0=%.6e res=%.3e\n", k,
              s.times[k - 1], int(s.capped[k - 1]), s.F[0][k],
              sys.residual(s, u, k));
    }
#endif
    double beta = 0.0, welfare = 0.0;
    for (int i = 0; i < n; ++i) {
      const TypeData& td = types[i];
      const double bi = 1.0 - td.E_inf * (1.0 - td.F_T) / u[i];
      const double vi = R1 + td.m * std::log(u[i]);
      eq.type_beta.push_back(bi);
      eq.type_value.push_back(vi);
      beta += td.weight * bi;
      welfare += td.weight * vi;
    }
    eq.beta = beta;
    eq.welfare = welfare;
  };

  if (!std::isinf(T)) {
    const double A_T = compute_A_T(mix, reward, T);
    if (A_T < reward.thresholds.front()) {
      // Nobody reaches even the first threshold; everyone best-responds to
      // an empty field.
      eq.all_unfinished = true;
      std::vector<double> u(n);
      for (int i = 0; i < n; ++i) {
        u[i] = types[i].F_T + types[i].E_inf * (1.0 - types[i].F_T);
      }
      March s = sys.march(u);
      // keep only the trivial tail: with A_T < r_1 every rank caps
      finish(s, u);
      eq.k0 = 0;
      eq.quantiles.clear();
      return eq;
    }
  }

  // Initial normalizations from each type's single-type equilibrium.
  std::vector<double> L(n);  // log u
  for (int i = 0; i < n; ++i) {
    ModelParams p{mix.atoms[i].x0, mix.sigma, mix.atoms[i].c, T, reward.floor};
    HomEquilibrium hom(p, reward);
    L[i] = (hom.value() - R1) / types[i].m;
  }

  // The implied-normalization map has the equilibrium as an unstable fixed
  // point, so plain iteration drifts off; use damped Newton on log u.
  auto G = [&](const std::vector<double>& logu, March* out) {
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = std::exp(logu[i]);
    March s = sys.march(u);
    std::vector<double> uh = sys.implied_u(s);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = std::log(uh[i]) - logu[i];
    if (out) *out = s;
    return g;
  };
  auto norm = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc = std::max(acc, std::abs(x));
    return acc;
  };

  March state;
  std::vector<double> g = G(L, &state);
  for (int it = 0; it < 200 && norm(g) > 1e-13; ++it) {
    std::vector<std::vector<double>> J(n, std::vector<double>(n));
    const double h = 1e-7;
    for (int j = 0; j < n; ++j) {
      std::vector<double> Lp = L;
      Lp[j] += h;
      std::vector<double> gp = G(Lp, nullptr);
      for (int i = 0; i < n; ++i) J[i][j] = (gp[i] - g[i]) / h;
    }
    std::vector<double> step = g;
    for (double& x : step) x = -x;
    solve_linear(J, step);  // J * step = -g
    double lam = 1.0;
    const double g0 = norm(g);
    for (int back = 0; back < 40; ++back) {
      std::vector<double> Ln = L;
      for (int i = 0; i < n; ++i) Ln[i] += lam * step[i];
      std::vector<double> gn = G(Ln, nullptr);
      if (norm(gn) < g0 || lam < 1e-6) {
        L = Ln;
        g = gn;
        break;
      }
      lam *= 0.5;
    }
  }
  if (norm(g) > 1e-11) {
    throw std::runtime_error("quantile system did not converge");
  }
  g = G(L, &state);
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = std::exp(L[i]);
  finish(state, u);
  return eq;
}

double het_effort_field(const HetEquilibrium& eq, int type, double t,
                        double x) {
  if (type < 0 || type >= int(eq.mix.atoms.size())) {
    throw std::out_of_range("bad type index");
  }
  if (x <= 0.0) return 0.0;
  const double sigma = eq.mix.sigma;
  const double m = 2.0 * eq.mix.atoms[type].c * sigma * sigma;
  const double R1 = eq.reward.levels.front();
  const double T = eq.horizon;
  FptLaw lawx(x / sigma);

  auto Fx = [&](double abs_time) {
    if (std::isinf(abs_time)) return 1.0;
    return fpt_cdf(lawx, std::max(abs_time - t, 0.0));
  };
  auto dFx = [&](double abs_time) {
    if (std::isinf(abs_time)) return 0.0;
    const double s = abs_time - t;
    return s > 0.0 ? fpt_cdf_dx(x, sigma, s) : 0.0;
  };
  auto E = [&](double R) { return std::exp((R - R1) / m); };

  const int k0 = eq.k0;
  double u = 0.0, ux = 0.0;
  double prevF = 0.0, prevD = 0.0;
  for (int k = 1; k <= k0; ++k) {
    const double curF = Fx(eq.quantiles[k - 1]);
    const double curD = dFx(eq.quantiles[k - 1]);
    const double Ek = E(eq.reward.levels[k - 1]);
    u += Ek * (curF - prevF);
    ux += Ek * (curD - prevD);
    prevF = curF;
    prevD = curD;
  }
  const double tail_E = k0 < int(eq.reward.levels.size())
                            ? E(eq.reward.levels[k0])
                            : E(eq.reward.floor);
  const double FT = Fx(T), DT = dFx(T);
  u += tail_E * (FT - prevF) + E(eq.reward.floor) * (1.0 - FT);
  ux += tail_E * (DT - prevD) - E(eq.reward.floor) * DT;
  return -sigma * sigma * ux / u;
}

}  // namespace mft
