#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfh/equilibrium.hpp"

using namespace tfh;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;
}  // namespace

TEST_CASE("equilibrium density of V = 0 is uniform") {
  auto psi = equilibrium_density(TrigPolynomial{});
  CHECK(psi.regular);
  CHECK(psi.min_value == doctest::Approx(1.0 / kTau).epsilon(1e-12));
  CHECK(kTau * psi.psi.coeff(0).real() == 1.0);
  CHECK(std::abs(psi.eval(1.234) - 1.0 / kTau) < 1e-15);
}

TEST_CASE("equilibrium density of gamma (z + 1/z)") {
  auto psi = equilibrium_density(TrigPolynomial::symmetric_pair(0.25));
  // psi(theta) = (1 - 0.5 cos theta)/(2 pi)
  for (double theta : {0.0, 0.7, kPi, 4.0}) {
    CHECK(psi.eval(theta) ==
          doctest::Approx((1.0 - 0.5 * std::cos(theta)) / kTau).epsilon(1e-13));
  }
  CHECK(psi.regular);
  CHECK(psi.min_value == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-10));

  auto bad = equilibrium_density(TrigPolynomial::symmetric_pair(0.6));
  CHECK_FALSE(bad.regular);
  CHECK(bad.min_value < 0.0);
}

TEST_CASE("mass normalization is exact") {
  for (double g : {0.05, 0.2, 0.45}) {
    auto psi = equilibrium_density(TrigPolynomial::symmetric_pair(g));
    CHECK(kTau * psi.psi.coeff(0).real() == 1.0);
    CHECK(psi.psi.real_on_circle());
  }
}

TEST_CASE("measure integrals by coefficient pairing") {
  auto psi = equilibrium_density(TrigPolynomial::symmetric_pair(0.25));
  CHECK(measure_integral(TrigPolynomial::constant(1.0), psi).real() ==
        doctest::Approx(1.0).epsilon(1e-15));
  // int W dmu = -2 a gamma for W = a(z + 1/z)
  CHECK(measure_integral(TrigPolynomial::symmetric_pair(0.1), psi).real() ==
        doctest::Approx(-0.05).epsilon(1e-13));
  CHECK(measure_integral(TrigPolynomial::symmetric_pair(0.25), psi).real() ==
        doctest::Approx(-2.0 * 0.25 * 0.25).epsilon(1e-13));
}

TEST_CASE("cdf of the equilibrium measure") {
  auto uniform = equilibrium_density(TrigPolynomial{});
  CHECK(cdf_mu(uniform, kPi) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf_mu(uniform, 0.0) == 0.0);

  for (double g : {0.1, 0.25, 0.4}) {
    auto psi = equilibrium_density(TrigPolynomial::symmetric_pair(g));
    CHECK(cdf_mu(psi, kPi) == doctest::Approx(0.5).epsilon(1e-13));
    for (double theta : {0.3, 1.9, 5.0}) {
      double expect = (theta - 2.0 * g * std::sin(theta)) / kTau;
      CHECK(cdf_mu(psi, theta) == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK(std::abs(cdf_mu(psi, kTau) - 1.0) < 1e-14);
    double prev = 0.0;
    for (int i = 1; i <= 64; ++i) {
      double cur = cdf_mu(psi, kTau * i / 64);
      CHECK(cur >= prev - 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("log-kernel integral matches the Euler-Lagrange identity") {
  auto uniform = equilibrium_density(TrigPolynomial{});
  CHECK(std::abs(log_kernel_integral(uniform, cplx(0.0, 1.0))) < 1e-15);

  TrigPolynomial V = TrigPolynomial::symmetric_pair(0.25);
  auto psi = equilibrium_density(V);
  CHECK(log_kernel_integral(psi, cplx(1.0, 0.0)) ==
        doctest::Approx(0.25).epsilon(1e-13));
  for (int i = 0; i < 64; ++i) {
    double phi = kTau * (i + 0.37) / 64;
    cplx z = std::polar(1.0, phi);
    double rhs = 0.5 * V.eval(phi).real();
    CHECK(std::abs(log_kernel_integral(psi, z) - rhs) < 1e-12);
  }
  CHECK_THROWS_AS(log_kernel_integral(psi, cplx(1.1, 0.0)), std::domain_error);
}

TEST_CASE("principal-value Cauchy closed forms") {
  // Lemma-form closed forms; for p = 0 both modes vanish
  CHECK(std::abs(pv_cauchy(TrigPolynomial{}, cplx(0.0, 1.0), PvMode::derivative)) <
        1e-15);
  CHECK(std::abs(pv_cauchy(TrigPolynomial{}, cplx(0.0, 1.0), PvMode::function)) <
        1e-15);

  TrigPolynomial p = TrigPolynomial::symmetric_pair(0.25);
  CHECK(pv_cauchy(p, cplx(1.0, 0.0), PvMode::derivative).real() ==
        doctest::Approx(0.5).epsilon(1e-13));
  // function mode at z = i: p_0 + 2 i Im(p_+(i)) = 2 i gamma
  cplx got = pv_cauchy(p, cplx(0.0, 1.0), PvMode::function);
  CHECK(std::abs(got - cplx(0.0, 0.5)) < 1e-13);
}
