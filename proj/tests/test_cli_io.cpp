#include <doctest.h>

#include <sstream>

#include "tfh/spec_file.hpp"

using namespace tfh;

TEST_CASE("parse a symbol spec") {
  std::istringstream in(
      "# counting example\n"
      "n 64\n"
      "V 1 0.25 0\n"
      "V -1 0.25 0\n"
      "W 1 0.1 0.02\n"
      "sing 2.0943951023931953 0.6 0 0.2 0\n");
  SymbolSpec spec = parse_symbol_spec(in);
  CHECK(spec.n == 64);
  CHECK(spec.V.coeff(1) == cplx(0.25, 0.0));
  CHECK(spec.W.coeff(1) == cplx(0.1, 0.02));
  REQUIRE(spec.singularities.size() == 2);
  CHECK(spec.singularities[0].theta == 0.0);
  CHECK(spec.singularities[0].trivial());
  CHECK(spec.singularities[1].alpha == cplx(0.6, 0.0));
}

TEST_CASE("spec write/parse round trip") {
  std::vector<Singularity> s{{1.0, cplx(0.5, 0.25), cplx(0.1, -0.3)}};
  SymbolSpec spec = SymbolSpec::make(TrigPolynomial::symmetric_pair(0.3),
                                     TrigPolynomial({{2, cplx(0.1, 0.7)}}), s,
                                     33);
  std::ostringstream out;
  write_symbol_spec(spec, out);
  std::istringstream in(out.str());
  SymbolSpec back = parse_symbol_spec(in);
  CHECK(back.n == spec.n);
  CHECK(back.V.coeff(-1) == spec.V.coeff(-1));
  CHECK(back.W.coeff(2) == spec.W.coeff(2));
  REQUIRE(back.singularities.size() == spec.singularities.size());
  CHECK(back.singularities[1].beta == spec.singularities[1].beta);
}

TEST_CASE("parse errors are reported") {
  std::istringstream bad1("V 1 0.5\n");
  CHECK_THROWS_AS(parse_symbol_spec(bad1), std::invalid_argument);
  std::istringstream bad2("frobnicate 1\n");
  CHECK_THROWS_AS(parse_symbol_spec(bad2), std::invalid_argument);
  std::istringstream bad3("sing 1.0 0 0 0.8 0\n");  // Re beta out of range
  CHECK_THROWS_AS(parse_symbol_spec(bad3), std::invalid_argument);
}
