#include "mft/fpt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mft/normal.hpp"
#include "mft/quadrature.hpp"

namespace mft {

FptLaw::FptLaw(double scaled_distance) : y(scaled_distance) {
  if (!(y > 0.0)) throw std::domain_error("FptLaw: scaled distance must be > 0");
}

double fpt_pdf(const FptLaw& law, double s) {
  if (s <= 0.0) return 0.0;
  return law.y / (s * std::sqrt(2.0 * M_PI * s)) *
         std::exp(-law.y * law.y / (2.0 * s));
}

double fpt_cdf(const FptLaw& law, double t) {
  if (t <= 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  // 2(1 - Phi(y/sqrt(t))) = erfc(y/sqrt(2t)), which keeps the deep tail.
  return std::erfc(law.y / std::sqrt(2.0 * t));
}

double fpt_quantile(const FptLaw& law, double p) {
  if (p < 0.0 || p > 1.0)
    throw std::domain_error("fpt_quantile: p outside [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  // Phi^{-1}(1 - p/2) = -Phi^{-1}(p/2); the lower tail stays representable
  // for tiny p.
  double z = -norm_quantile(0.5 * p);
  return (law.y / z) * (law.y / z);
}

double fpt_cdf_dx(double x, double sigma, double s) {
  if (!(x > 0.0 && sigma > 0.0 && s > 0.0))
    throw std::domain_error("fpt_cdf_dx: requires x, sigma, s > 0");
  double rs = sigma * std::sqrt(s);
  return -2.0 * norm_pdf(x / rs) / rs;
}

double fpt_expectation(const FptLaw& law,
                       const std::function<double(double)>& g, double tol) {
  const double y2 = law.y * law.y;
  auto integrand = [&](double z) {
    return 2.0 * g(y2 / (z * z)) * norm_pdf(z);
  };
  // phi(z) is below 1e-18 past z = 9.5; the remainder is negligible for
  // bounded g.
  return adaptive_simpson(integrand, 1e-12, 9.5, tol);
}

}  // namespace mft
