#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfh/asymptotics.hpp"
#include "tfh/special.hpp"

using namespace tfh;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;
}  // namespace

TEST_CASE("thm11 constants, trivial and Szego cases") {
  auto zero = thm11_constants(SymbolSpec::make({}, {}, {}, 0));
  for (auto& c : zero.constants) CHECK(std::abs(c) < 1e-15);

  auto pot = thm11_constants(
      SymbolSpec::make(TrigPolynomial::symmetric_pair(0.25), {}, {}, 0));
  CHECK(std::abs(pot.constants[0] - cplx(0.0625, 0.0)) < 1e-14);
  CHECK(std::abs(pot.constants[1]) < 1e-14);
  CHECK(std::abs(pot.constants[2]) < 1e-14);
  CHECK(std::abs(pot.constants[3]) < 1e-14);
}

TEST_CASE("thm11 pure root singularity reduces to the Fisher-Hartwig form") {
  SymbolSpec spec = SymbolSpec::make({}, {}, {}, 0);
  spec.singularities[0].alpha = cplx(0.8, 0.0);
  auto exp11 = thm11_constants(spec);
  CHECK(std::abs(exp11.constants[2] - cplx(0.8 * 0.8 / 4.0, 0.0)) < 1e-14);
  cplx expect_c4 = 2.0 * log_barnes_g(cplx(1.4, 0.0)) -
                   log_barnes_g(cplx(1.8, 0.0));
  CHECK(std::abs(exp11.constants[3] - expect_c4) < 1e-13);
}

TEST_CASE("thm41 constants") {
  auto zero = thm41_constants({}, {});
  for (auto& c : zero.constants) CHECK(std::abs(c) < 1e-15);

  auto szego = thm41_constants(TrigPolynomial::symmetric_pair(0.3), {});
  CHECK(std::abs(szego.constants[0]) < 1e-15);
  CHECK(std::abs(szego.constants[1]) < 1e-15);
  CHECK(std::abs(szego.constants[2] - cplx(0.09, 0.0)) < 1e-15);

  std::vector<Singularity> s{{0.0, cplx(0.7, 0.0), cplx(0.2, 0.0)}};
  auto fh = thm41_constants({}, s);
  cplx expect = log_barnes_g(cplx(1.55, 0.0)) + log_barnes_g(cplx(1.15, 0.0)) -
                log_barnes_g(cplx(1.7, 0.0));
  CHECK(std::abs(fh.constants[2] - expect) < 1e-13);
  CHECK(fh.error_exponent == doctest::Approx(-0.6));
}

TEST_CASE("prop44 constants and non-regular rejection") {
  auto zero = prop44_constants(SymbolSpec::make({}, {}, {}, 0));
  for (auto& c : zero.constants) CHECK(std::abs(c) < 1e-15);

  auto pot = prop44_constants(
      SymbolSpec::make(TrigPolynomial::symmetric_pair(0.25), {}, {}, 0));
  CHECK(std::abs(pot.constants[0] - cplx(0.0625, 0.0)) < 1e-14);
  CHECK(std::abs(pot.constants[1]) < 1e-14);
  CHECK(std::abs(pot.constants[2]) < 1e-14);

  CHECK_THROWS_AS(prop44_constants(SymbolSpec::make(
                      TrigPolynomial::symmetric_pair(0.6), {}, {}, 0)),
                  std::domain_error);
}

TEST_CASE("thm11 specializes to thm41 at V = 0") {
  std::vector<Singularity> s{{1.3, cplx(0.4, 0.1), cplx(0.1, -0.2)}};
  TrigPolynomial W({{1, cplx(0.2, 0.1)}, {-1, cplx(0.15, 0.0)}});
  SymbolSpec spec = SymbolSpec::make({}, W, s, 0);
  auto full = thm11_constants(spec);
  auto v0 = thm41_constants(W, s);
  CHECK(std::abs(full.constants[0]) < 1e-14);
  CHECK(std::abs(full.constants[1] - v0.constants[0]) < 1e-13);
  CHECK(std::abs(full.constants[2] - v0.constants[1]) < 1e-13);
  CHECK(std::abs(full.constants[3] - v0.constants[2]) < 1e-13);
}

TEST_CASE("reality of the constants on the positive-symbol fast path") {
  std::vector<Singularity> s{{2.2, cplx(0.5, 0.0), cplx(0.0, 0.17)}};
  SymbolSpec spec = SymbolSpec::make(TrigPolynomial::symmetric_pair(0.2),
                                     TrigPolynomial::symmetric_pair(0.12), s, 0);
  REQUIRE(spec.hermitian_fast_path());
  auto full = thm11_constants(spec);
  CHECK(std::abs(full.constants[0].imag()) < 1e-12);
  CHECK(std::abs(full.constants[1].imag()) < 1e-12);
  CHECK(std::abs(full.constants[2].imag()) < 1e-12);
}

TEST_CASE("thm17 constants") {
  MgfParams p;
  p.W = TrigPolynomial::symmetric_pair(0.3);
  p.alphas = {cplx(0.0, 0.0)};
  auto only_w = thm17_constants(p);
  CHECK(std::abs(only_w.expansion.constants[0] - cplx(0.0, 0.0)) < 1e-14);
  CHECK(std::abs(only_w.expansion.constants[1]) < 1e-14);
  CHECK(std::abs(only_w.expansion.constants[2] - cplx(0.09, 0.0)) < 1e-14);

  // m = 1, alpha = 0, real u, V = 0: C~2 = 2 u^2/(4 pi^2)
  MgfParams q;
  q.alphas = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
  q.us = {cplx(0.7, 0.0)};
  q.thetas = {kPi};
  auto count = thm17_constants(q);
  CHECK(std::abs(count.expansion.constants[1] -
                 cplx(2.0 * 0.49 / (4.0 * kPi * kPi), 0.0)) < 1e-14);
  // C~1 = u * cdf(pi) = 0.35 for the uniform measure
  CHECK(std::abs(count.expansion.constants[0] - cplx(0.35, 0.0)) < 1e-14);
  CHECK(count.betas.size() == 2);
  CHECK(std::abs(count.betas[1] - cplx(0.0, -0.7 / kTau)) < 1e-15);
}

TEST_CASE("thm17 second derivative reproduces the counting variance") {
  // d^2/du^2 [C~1 n + C~2 log n + C~3] at u = 0 vs predicted_cumulants
  TrigPolynomial V = TrigPolynomial::symmetric_pair(0.25);
  double theta = 2.2;
  int n = 128;
  auto g = [&](double u) {
    MgfParams p;
    p.V = V;
    p.alphas = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    p.us = {cplx(u, 0.0)};
    p.thetas = {theta};
    auto e = thm17_constants(p);
    return e.expansion.predict_log(double(n)).real();
  };
  double h = 1e-3;
  double d2 = (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h);
  auto pred = predicted_cumulants(StatKind::counting, V, {}, theta, n);
  CHECK(d2 == doctest::Approx(pred[1]).epsilon(1e-6));
  // first derivative gives the mean
  double d1 = (g(h) - g(-h)) / (2.0 * h);
  CHECK(d1 == doctest::Approx(pred[0]).epsilon(1e-7));
}

TEST_CASE("predicted cumulants") {
  TrigPolynomial W = TrigPolynomial::symmetric_pair(0.3);
  auto smooth = predicted_cumulants(StatKind::smooth, {}, W, 0.0, 50);
  CHECK(smooth[1] == doctest::Approx(0.18).epsilon(1e-13));
  CHECK(smooth[2] == 0.0);

  auto logabs = predicted_cumulants(StatKind::log_abs, {}, {}, 1.0, 100);
  CHECK(logabs[1] == doctest::Approx(0.5 * std::log(100.0) +
                                     0.5 * (1.0 + euler_gamma()))
                         .epsilon(1e-13));

  auto count = predicted_cumulants(StatKind::counting, {}, {}, kPi, 100);
  CHECK(count[2] == 0.0);
  CHECK(count[3] == doctest::Approx(-6.0 * zeta(3) / (4.0 * std::pow(kPi, 4)))
                        .epsilon(1e-13));
  CHECK_THROWS_AS(predicted_cumulants(StatKind::counting, {}, {}, 0.0, 100),
                  std::domain_error);
}

TEST_CASE("classical locations") {
  auto uniform = equilibrium_density({});
  auto eta = classical_locations(uniform, 8);
  for (int k = 1; k <= 8; ++k) {
    CHECK(eta[k - 1] == doctest::Approx(kTau * k / 8.0).epsilon(1e-12));
  }

  auto psi = equilibrium_density(TrigPolynomial::symmetric_pair(0.3));
  auto eta64 = classical_locations(psi, 64);
  CHECK(eta64[31] == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(eta64[63] == doctest::Approx(kTau).epsilon(1e-14));
  for (int k = 1; k <= 64; ++k) {
    CHECK(std::abs(cdf_mu(psi, eta64[k - 1]) - k / 64.0) < 1e-12);
  }
}
