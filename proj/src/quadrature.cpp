#include "mft/quadrature.hpp"

#include <array>
#include <cmath>

namespace mft {

namespace {

constexpr int kOrder = 64;

struct GLRule {
  std::array<double, kOrder> node;
  std::array<double, kOrder> weight;

  GLRule() {
    // Nodes are the roots of P_64, found by Newton from the Chebyshev guess.
    const int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      node[i] = -x;
      node[n - 1 - i] = x;
      double w = 2.0 / ((1.0 - x * x) * pp * pp);
      weight[i] = w;
      weight[n - 1 - i] = w;
    }
  }
};

const GLRule& rule() {
  static const GLRule r;
  return r;
}

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, lm, flm);
  double right = simpson(f, m, fm, b, fb, rm, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b) {
  const GLRule& r = rule();
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kOrder; ++i) s += r.weight[i] * f(c + h * r.node[i]);
  return s * h;
}

double gauss_legendre_composite(const std::function<double(double)>& f,
                                double a, double b, int cells) {
  double s = 0.0;
  double h = (b - a) / cells;
  for (int i = 0; i < cells; ++i)
    s += gauss_legendre(f, a + i * h, a + (i + 1) * h);
  return s;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson(f, a, fa, b, fb, m, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 50);
}

}  // namespace mft
