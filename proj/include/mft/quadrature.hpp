#ifndef MFT_QUADRATURE_HPP_
#define MFT_QUADRATURE_HPP_

#include <functional>

namespace mft {

// 64-point Gauss-Legendre rule on [a,b].
double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b);

// Composite Gauss-Legendre over `cells` equal subintervals of [a,b].
double gauss_legendre_composite(const std::function<double(double)>& f,
                                double a, double b, int cells);

// Adaptive Simpson with absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace mft

#endif  // MFT_QUADRATURE_HPP_
