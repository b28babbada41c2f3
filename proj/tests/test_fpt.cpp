#include <stdexcept>
#include <cmath>

#include <doctest.h>

#include "mft/fpt.hpp"
#include "mft/normal.hpp"

using namespace mft;

// Reference values computed with 30-digit arithmetic (mpmath).
TEST_CASE("first-passage cdf matches high-precision references") {
  CHECK(fpt_cdf(FptLaw(1.0), 1.0) == doctest::Approx(0.317310507862914103).epsilon(1e-14));
  CHECK(fpt_cdf(FptLaw(4.0), 1.0) == doctest::Approx(6.33424836662398425e-5).epsilon(1e-13));
  CHECK(fpt_cdf(FptLaw(2.0), 0.5) == doctest::Approx(4.67773498104726584e-3).epsilon(1e-13));
  CHECK(fpt_cdf(FptLaw(0.5), 3.0) == doctest::Approx(0.772829992684447496).epsilon(1e-14));
  // Deep tail: must not round to zero or lose relative accuracy.
  CHECK(fpt_cdf(FptLaw(6.0), 1.0) == doctest::Approx(1.97317529007539628e-9).epsilon(1e-12));
  CHECK(fpt_cdf(FptLaw(4.0), 0.25) == doctest::Approx(1.24419211485435682e-15).epsilon(1e-12));
}

TEST_CASE("cdf is a distribution function in t") {
  FptLaw law(1.7);
  CHECK(fpt_cdf(law, 0.0) == 0.0);
  double prev = 0.0;
  for (double t = 0.01; t < 50.0; t *= 1.7) {
    const double cur = fpt_cdf(law, t);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK(fpt_cdf(law, 1e8) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("quantile inverts the cdf including tiny ranks") {
  FptLaw law(3.2);
  for (double p : {1e-20, 1e-12, 1e-6, 0.01, 0.3, 0.9, 0.999}) {
    const double t = fpt_quantile(law, p);
    CHECK(fpt_cdf(law, t) == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("pdf is the t-derivative of the cdf") {
  FptLaw law(2.0);
  for (double t : {0.3, 1.0, 4.0}) {
    const double h = 1e-5 * t;
    const double fd = (fpt_cdf(law, t + h) - fpt_cdf(law, t - h)) / (2 * h);
    CHECK(fpt_pdf(law, t) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("fpt_cdf_dx is the space-derivative of the cdf") {
  const double sigma = 0.25;
  for (double x : {0.2, 1.0}) {
    for (double t : {0.5, 2.0}) {
      const double h = 1e-6;
      const double fd = (fpt_cdf(FptLaw((x + h) / sigma), t) -
                         fpt_cdf(FptLaw((x - h) / sigma), t)) /
                        (2 * h);
      CHECK(fpt_cdf_dx(x, sigma, t) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

// E[exp(-lambda tau_y)] = exp(-y sqrt(2 lambda)), the classical transform.
TEST_CASE("expectation reproduces the Laplace transform") {
  auto lap = [](double y, double lam) {
    return fpt_expectation(FptLaw(y),
                           [lam](double t) { return std::exp(-lam * t); }, 1e-10);
  };
  CHECK(lap(1.0, 1.0) == doctest::Approx(0.243116734434214211).epsilon(1e-8));
  CHECK(lap(2.0, 0.7) == doctest::Approx(0.0938148693911249332).epsilon(1e-8));
  CHECK(lap(4.0, 2.0) == doctest::Approx(3.35462627902511839e-4).epsilon(1e-8));
}

TEST_CASE("expectation handles heavy-tailed integrands") {
  // E[1/(1+tau)] for y=1, 30-digit reference.
  const double v =
      fpt_expectation(FptLaw(1.0), [](double t) { return 1.0 / (1.0 + t); }, 1e-10);
  CHECK(v == doctest::Approx(0.344320457581201528).epsilon(1e-8));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(FptLaw(-1.0), std::domain_error);
  CHECK_THROWS_AS(fpt_quantile(FptLaw(1.0), 1.5), std::domain_error);
}
