#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfh/special.hpp"

using namespace tfh;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("zeta values and Euler's constant") {
  CHECK(std::abs(zeta(2) - kPi * kPi / 6.0) < 1e-14);
  CHECK(std::abs(zeta(4) - std::pow(kPi, 4) / 90.0) < 1e-14);
  CHECK(std::abs(euler_gamma() - 0.5772156649015329) < 1e-12);
}

TEST_CASE("log gamma") {
  CHECK(std::abs(log_gamma(cplx(1.0, 0.0))) < 1e-14);
  CHECK(std::abs(log_gamma(cplx(2.0, 0.0))) < 1e-14);
  CHECK(std::abs(log_gamma(cplx(0.5, 0.0)).real() - 0.5 * std::log(kPi)) <
        1e-13);
  for (double x : {0.1, 0.7, 3.3, 12.9, 41.0}) {
    CHECK(std::abs(log_gamma(cplx(x, 0.0)).real() - std::lgamma(x)) <
          1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
  }
  CHECK_THROWS_AS(log_gamma(cplx(-1.0, 0.5)), std::domain_error);
}

TEST_CASE("Barnes G at small integers") {
  for (int k : {1, 2, 3}) {
    CHECK(std::abs(log_barnes_g(cplx(double(k), 0.0))) < 1e-13);
  }
  CHECK(std::abs(log_barnes_g(cplx(4.0, 0.0)).real() - std::log(2.0)) < 1e-13);
  CHECK(std::abs(log_barnes_g(cplx(5.0, 0.0)).real() - std::log(12.0)) < 1e-12);
}

TEST_CASE("Barnes G recurrence and reality") {
  // residual |log G(z+1) - log Gamma(z) - log G(z)| across the half-plane
  for (double re : {0.5, 0.9, 1.5, 2.7}) {
    for (double im : {-4.5, -2.0, -0.3, 0.0, 0.4, 1.1, 3.8}) {
      cplx z(re, im);
      cplx res = log_barnes_g(z + cplx(1.0, 0.0)) - log_gamma(z) -
                 log_barnes_g(z);
      CHECK(std::abs(res) < 1e-12);
    }
  }
  for (double x : {0.3, 1.2, 2.5, 6.0}) {
    CHECK(std::abs(log_barnes_g(cplx(x, 0.0)).imag()) < 1e-13);
  }
}

TEST_CASE("derivatives of log G at 1") {
  CHECK(log_g_deriv_at_1(1) ==
        doctest::Approx((std::log(2.0 * kPi) - 1.0) / 2.0).epsilon(1e-14));
  CHECK(log_g_deriv_at_1(1) == doctest::Approx(0.41893853).epsilon(1e-7));
  CHECK(log_g_deriv_at_1(2) ==
        doctest::Approx(-(1.0 + euler_gamma())).epsilon(1e-14));
  CHECK(log_g_deriv_at_1(3) == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-13));
  CHECK(log_g_deriv_at_1(4) == doctest::Approx(-6.0 * zeta(3)).epsilon(1e-13));
}
