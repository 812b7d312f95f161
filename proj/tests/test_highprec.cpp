#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfh/highprec.hpp"

using namespace tfh;

// Reference values computed independently with mpmath at 140 digits
// (panel quadrature of the symbol + exact LU of the moment matrix).

TEST_CASE("steep-potential determinants against the closed form") {
  // V = g(z + 1/z), W = 0, no singularities: log D_n = g^2 n^2 up to an
  // exponentially small remainder (4.22e-10 at n = 16, < 1e-38 at n = 64)
  for (int n : {16, 32, 64}) {
    SymbolSpec spec =
        SymbolSpec::make(TrigPolynomial::symmetric_pair(0.25), {}, {}, n);
    LogDet ld = logdet_symbol(spec, n);
    double expect = 0.0625 * n * n;
    double tol = (n == 16) ? 5e-10 : 1e-9;
    CHECK(std::abs(ld.total_log_modulus() - expect) < tol);
    CHECK(std::abs(ld.phase) < 1e-10);
  }
  // frozen remainder at n = 16 (instanton term, mpmath @ 400 digits)
  SymbolSpec s16 =
      SymbolSpec::make(TrigPolynomial::symmetric_pair(0.25), {}, {}, 16);
  LogDet ld16 = logdet_symbol(s16, 16);
  CHECK(ld16.total_log_modulus() ==
        doctest::Approx(15.999999999578411166).epsilon(1e-13));
}

TEST_CASE("steep potential with a root singularity (frozen oracle)") {
  // V = 0.25(z+1/z), |z - e^{2i}|^{0.7}, n = 32; mpmath reference
  std::vector<Singularity> s{{2.0, cplx(0.7, 0.0), cplx(0.0, 0.0)}};
  SymbolSpec spec =
      SymbolSpec::make(TrigPolynomial::symmetric_pair(0.25), {}, s, 32);
  CHECK(planned_precision_bits(spec) > 0);
  LogDet ld = logdet_symbol(spec, 32);
  CHECK(ld.total_log_modulus() ==
        doctest::Approx(62.2119518862122879).epsilon(1e-12));
  CHECK(std::abs(ld.phase) < 1e-11);
}

TEST_CASE("steep non-Hermitian symbol (frozen oracle)") {
  // V = 0.3(z+1/z), W = 0.1(z+1/z), alpha = 0.6, beta = 0.2 at 2pi/3, n = 24
  std::vector<Singularity> s{
      {2.0943951023931953, cplx(0.6, 0.0), cplx(0.2, 0.0)}};
  SymbolSpec spec = SymbolSpec::make(TrigPolynomial::symmetric_pair(0.3),
                                     TrigPolynomial::symmetric_pair(0.1), s, 24);
  LogDet ld = logdet_symbol(spec, 24);
  CHECK(ld.total_log_modulus() ==
        doctest::Approx(48.4954041129972384624).epsilon(1e-12));
  // mpmath reports the principal argument; the ladder phase is continuous
  double wrapped = std::remainder(ld.phase - (-2.4593871852578751), 2.0 * std::numbers::pi);
  CHECK(std::abs(wrapped) < 1e-10);
}

TEST_CASE("double and MPFR paths agree across the dispatch threshold") {
  // osc just under / over the threshold must give consistent values
  TrigPolynomial V = TrigPolynomial::symmetric_pair(0.1);
  SymbolSpec mild = SymbolSpec::make(V, {}, {}, 30);   // osc = 12
  SymbolSpec steep = SymbolSpec::make(V, {}, {}, 40);  // osc = 16
  CHECK(planned_precision_bits(mild) == 0);
  CHECK(planned_precision_bits(steep) > 0);
  // closed form g^2 n^2 holds for both (remainder ~ e^{-cn} but c is small
  // for g = 0.1; compare against a relaxed band instead)
  LogDet a = logdet_symbol(mild, 30);
  LogDet b = logdet_symbol(steep, 40);
  CHECK(std::abs(a.total_log_modulus() - 0.01 * 900) < 2e-4);
  CHECK(std::abs(b.total_log_modulus() - 0.01 * 1600) < 2e-4);
}
