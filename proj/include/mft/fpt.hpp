#ifndef MFT_FPT_HPP_
#define MFT_FPT_HPP_

#include <functional>

namespace mft {

// First passage time of a driftless Brownian motion to level 0, started at
// scaled distance y = x/sigma > 0.  The law of tau_y equals y^2 times the
// law of tau_1, and F(y, t) = F(1, t/y^2).
struct FptLaw {
  double y;

  explicit FptLaw(double scaled_distance);
};

// Density |y| / (s sqrt(2 pi s)) exp(-y^2 / (2s)); 0 for s <= 0.
double fpt_pdf(const FptLaw& law, double s);

// 2 (1 - Phi(y / sqrt(t))); 0 at t = 0, 1 at t = +inf.
double fpt_cdf(const FptLaw& law, double t);

// Inverse of fpt_cdf: t = (y / Phi^{-1}(1 - p/2))^2.  p = 1 maps to +inf.
double fpt_quantile(const FptLaw& law, double p);

// d/dx of the cdf of tau_{x/sigma} at time s: -2 phi(x/(sigma sqrt(s))) /
// (sigma sqrt(s)).  Always negative.
double fpt_cdf_dx(double x, double sigma, double s);

// E[g(tau_y)] through the half-normal substitution tau_y = y^2 / Z^2,
// which turns the heavy-tailed integral into 2 int_0^inf g(y^2/z^2) phi(z) dz.
double fpt_expectation(const FptLaw& law,
                       const std::function<double(double)>& g, double tol);

}  // namespace mft

#endif  // MFT_FPT_HPP_
