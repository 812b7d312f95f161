#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfh/symbol.hpp"

using namespace tfh;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;
}  // namespace

TEST_CASE("omega_alpha") {
  Singularity s{0.0, cplx(0.0, 0.0), cplx(0.0, 0.0)};
  CHECK(std::abs(omega_alpha(s, 2.1) - 1.0) < 1e-15);

  Singularity s2{0.0, cplx(2.0, 0.0), cplx(0.0, 0.0)};
  CHECK(omega_alpha(s2, kPi).real() == doctest::Approx(4.0).epsilon(1e-14));

  Singularity s3{0.0, cplx(1.0, 0.0), cplx(0.0, 0.0)};
  CHECK(std::abs(omega_alpha(s3, 1e-9)) < 1e-8);
  CHECK(omega_alpha(s3, 0.0) == cplx(0.0, 0.0));

  Singularity s4{0.0, cplx(-0.5, 0.0), cplx(0.0, 0.0)};
  CHECK_THROWS_AS(omega_alpha(s4, 0.0), std::domain_error);
}

TEST_CASE("omega_beta branches and jump ratio") {
  Singularity s{0.0, cplx(0.0, 0.0), cplx(0.0, 0.0)};
  CHECK(std::abs(omega_beta(s, 1.0) - 1.0) < 1e-15);

  Singularity s0{0.0, cplx(0.0, 0.0), cplx(0.3, 0.0)};
  CHECK(std::abs(omega_beta(s0, kPi) - cplx(1.0, 0.0)) < 1e-14);

  for (cplx beta : {cplx(0.2, 0.0), cplx(-0.1, 0.3), cplx(0.0, 0.15)}) {
    Singularity sk{2.0, cplx(0.0, 0.0), beta};
    double eps = 1e-9;
    cplx left = omega_beta(sk, 2.0 - eps);
    cplx right = omega_beta(sk, 2.0 + eps);
    cplx ratio = left / right;
    cplx expect = std::exp(cplx(0.0, 1.0) * kTau * beta);
    CHECK(std::abs(ratio - expect) < 1e-7);
  }
}

TEST_CASE("symbol evaluation") {
  SymbolSpec trivial = SymbolSpec::make({}, {}, {}, 7);
  CHECK(std::abs(symbol_eval(trivial, 0.3) - 1.0) < 1e-14);

  SymbolSpec szego =
      SymbolSpec::make(TrigPolynomial::symmetric_pair(0.25), {}, {}, 10);
  CHECK(symbol_eval(szego, 0.0).real() ==
        doctest::Approx(std::exp(-5.0)).epsilon(1e-12));

  SymbolSpec root = SymbolSpec::make({}, {}, {}, 0);
  root.singularities[0].alpha = cplx(1.0, 0.0);
  CHECK(symbol_eval(root, kPi).real() == doctest::Approx(2.0).epsilon(1e-13));

  // no-overflow path at large n
  SymbolSpec big = SymbolSpec::make(TrigPolynomial::symmetric_pair(0.3), {}, {},
                                    10000);
  LogVal lv = log_symbol_eval(big, 0.0);
  CHECK(lv.log_mod == doctest::Approx(-6000.0).epsilon(1e-12));
}

TEST_CASE("fourier coefficients of the identity symbol") {
  SymbolSpec trivial = SymbolSpec::make({}, {}, {}, 0);
  CoeffTable tab = fourier_coeffs(trivial, 8, 1e-13);
  CHECK(std::abs(tab.at(0) * std::exp(tab.s_star) - 1.0) < 1e-13);
  for (int k = 1; k <= 8; ++k) {
    CHECK(std::abs(tab.at(k)) < 1e-13);
    CHECK(std::abs(tab.at(-k)) < 1e-13);
  }
}

TEST_CASE("jump coefficient spot value") {
  SymbolSpec spec = SymbolSpec::make({}, {}, {}, 0);
  spec.singularities[0].beta = cplx(0.2, 0.0);
  CoeffTable tab = fourier_coeffs(spec, 4, 1e-13);
  double expect = std::sin(kPi * 0.2) / (kPi * (0.2 - 1.0));
  CHECK(tab.at(1).real() * std::exp(tab.s_star) ==
        doctest::Approx(expect).epsilon(1e-10));
  CHECK(expect == doctest::Approx(-0.23387).epsilon(1e-4));
}

TEST_CASE("coefficients match a plain DFT for singularity-free symbols") {
  SymbolSpec spec = SymbolSpec::make(TrigPolynomial::symmetric_pair(0.2),
                                     TrigPolynomial({{1, cplx(0.1, 0.05)},
                                                     {-2, cplx(0.0, -0.07)}}),
                                     {}, 4);
  CoeffTable tab = fourier_coeffs(spec, 16, 1e-13);
  const int grid = 1024;
  for (int k = -16; k <= 16; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < grid; ++j) {
      double theta = kTau * j / grid;
      acc += symbol_eval(spec, theta) * std::polar(1.0, -k * theta);
    }
    acc /= grid;
    CHECK(std::abs(tab.at(k) * std::exp(tab.s_star) - acc) < 1e-12);
  }
}

TEST_CASE("Hermitian fast path produces a Hermitian table") {
  std::vector<Singularity> sings{{2.0, cplx(0.5, 0.0), cplx(0.0, 0.12)}};
  SymbolSpec spec = SymbolSpec::make(TrigPolynomial::symmetric_pair(0.25),
                                     TrigPolynomial::symmetric_pair(0.1), sings,
                                     24);
  CHECK(spec.hermitian_fast_path());
  CoeffTable tab = fourier_coeffs(spec, 32, 1e-12);
  CHECK(tab.hermitian(1e-11));

  // scaled coefficients stay O(1) even when e^{-nV} spans many decades
  SymbolSpec steep =
      SymbolSpec::make(TrigPolynomial::symmetric_pair(0.3), {}, {}, 220);
  CoeffTable tab2 = fourier_coeffs(steep, 220, 1e-12);
  double biggest = 0.0;
  for (int k = -220; k <= 220; ++k) biggest = std::max(biggest, std::abs(tab2.at(k)));
  CHECK(biggest < 10.0);
  CHECK(tab2.s_star > 100.0);
}

TEST_CASE("non-Hermitian beta breaks the fast path flag") {
  std::vector<Singularity> sings{{2.0, cplx(0.0, 0.0), cplx(0.2, 0.0)}};
  SymbolSpec spec = SymbolSpec::make({}, {}, sings, 0);
  CHECK_FALSE(spec.hermitian_fast_path());
}
