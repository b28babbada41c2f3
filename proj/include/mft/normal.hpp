#ifndef MFT_NORMAL_HPP_
#define MFT_NORMAL_HPP_

namespace mft {

// Standard normal pdf/cdf and the inverse cdf.
//
// The cdf is computed through erfc so that the upper tail keeps full
// relative precision (|abs error| < 1e-15).  The inverse uses Acklam's
// rational approximation refined by one Halley step, giving ~1e-15
// absolute accuracy on (0,1).

double norm_pdf(double x);
double norm_cdf(double x);
double norm_quantile(double p);

}  // namespace mft

#endif  // MFT_NORMAL_HPP_
