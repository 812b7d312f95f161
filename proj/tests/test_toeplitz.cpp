#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfh/toeplitz.hpp"

using namespace tfh;

namespace {

struct Rng {
  std::uint64_t s;
  double uniform(double lo, double hi) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return lo + (hi - lo) * ((z >> 11) * 0x1.0p-53);
  }
};

CoeffTable table_from(std::vector<std::pair<int, cplx>> entries, int K) {
  CoeffTable t;
  t.K = K;
  t.c.assign(2 * K + 1, cplx(0.0, 0.0));
  for (auto& [k, v] : entries) t.c[static_cast<std::size_t>(k + K)] = v;
  return t;
}

// cofactor-expansion determinant, the brute-force oracle
cplx cofactor_det(const std::vector<cplx>& a, int n) {
  if (n == 1) return a[0];
  cplx det(0.0, 0.0);
  double sign = 1.0;
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> minor;
    minor.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
    for (int r = 1; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.push_back(a[static_cast<std::size_t>(r) * n + c]);
      }
    }
    det += sign * a[static_cast<std::size_t>(j)] * cofactor_det(minor, n - 1);
    sign = -sign;
  }
  return det;
}

}  // namespace

TEST_CASE("build_toeplitz layout") {
  CoeffTable t = table_from({{0, 1.0}, {1, cplx(2.0, 1.0)}, {-1, 3.0}}, 2);
  auto m1 = build_toeplitz(t, 1);
  CHECK(m1[0] == cplx(1.0, 0.0));
  auto m2 = build_toeplitz(t, 2);
  CHECK(m2[0] == cplx(1.0, 0.0));
  CHECK(m2[1] == cplx(3.0, 0.0));        // (0,1) = f_{-1}
  CHECK(m2[2] == cplx(2.0, 1.0));        // (1,0) = f_1
  CHECK(m2[3] == cplx(1.0, 0.0));

  CoeffTable ident = table_from({{0, 1.0}}, 4);
  auto m4 = build_toeplitz(ident, 4);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      CHECK(m4[static_cast<std::size_t>(j) * 4 + k] ==
            (j == k ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));
    }
  }
}

TEST_CASE("logdet_general basics") {
  CoeffTable ident = table_from({{0, 1.0}}, 8);
  LogDet ld = logdet_general(ident, 8);
  CHECK(std::abs(ld.log_modulus) < 1e-14);
  CHECK(std::abs(ld.phase) < 1e-14);

  CoeffTable t =
      table_from({{0, 1.0}, {1, 0.25}, {-1, 0.25}}, 2);
  LogDet d2 = logdet_general(t, 2);
  CHECK(d2.log_modulus == doctest::Approx(std::log(0.9375)).epsilon(1e-14));
}

TEST_CASE("logdet_general vs cofactor oracle at n <= 6") {
  Rng rng{7};
  for (int rep = 0; rep < 8; ++rep) {
    CoeffTable t;
    t.K = 5;
    t.c.resize(11);
    for (auto& v : t.c) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    t.c[5] += cplx(3.0, 0.0);  // keep comfortably nonsingular
    for (int n = 1; n <= 6; ++n) {
      auto m = build_toeplitz(t, n);
      cplx oracle = cofactor_det(m, n);
      LogDet ld = logdet_general(t, n);
      cplx got = std::exp(cplx(ld.log_modulus, ld.phase));
      CHECK(std::abs(got - oracle) < 1e-10 * std::abs(oracle));
    }
  }
}

TEST_CASE("levinson on Hermitian positive definite tables") {
  CoeffTable ident = table_from({{0, 1.0}}, 8);
  auto res = logdet_levinson(ident, 8);
  CHECK(std::abs(res.logdet.log_modulus) < 1e-14);
  for (auto& r : res.reflections) CHECK(std::abs(r) < 1e-14);

  CoeffTable t = table_from({{0, 1.0}, {1, 0.25}, {-1, 0.25}}, 2);
  auto r2 = logdet_levinson(t, 2);
  CHECK(r2.logdet.log_modulus ==
        doctest::Approx(std::log(0.9375)).epsilon(1e-14));

  // agreement with the general path on a larger HPD instance
  Rng rng{11};
  CoeffTable big;
  big.K = 128;
  big.c.assign(257, cplx(0.0, 0.0));
  big.c[128] = cplx(2.0, 0.0);
  for (int k = 1; k <= 128; ++k) {
    cplx v(rng.uniform(-1, 1), rng.uniform(-1, 1));
    v /= (1.0 + double(k) * k);
    big.c[static_cast<std::size_t>(128 + k)] = v;
    big.c[static_cast<std::size_t>(128 - k)] = std::conj(v);
  }
  auto lev = logdet_levinson(big, 128);
  auto gen = logdet_general(big, 128);
  CHECK(lev.logdet.log_modulus ==
        doctest::Approx(gen.log_modulus).epsilon(1e-9));
  CHECK(std::abs(gen.phase) < 1e-9);
  for (auto& r : lev.reflections) CHECK(std::abs(r) < 1.0);

  // non-HPD input must break down
  CoeffTable bad = table_from({{0, 1.0}, {1, 2.0}, {-1, 2.0}}, 2);
  CHECK_THROWS_AS(logdet_levinson(bad, 2), std::runtime_error);
}

TEST_CASE("biorthogonal ladder matches LU on non-Hermitian tables") {
  Rng rng{23};
  for (int rep = 0; rep < 6; ++rep) {
    CoeffTable t;
    t.K = 16;
    t.c.resize(33);
    for (auto& v : t.c) v = cplx(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4));
    t.c[16] = cplx(2.5, 0.3);
    for (int n : {4, 9, 16}) {
      auto lad = logdet_ladder(t, n);
      auto gen = logdet_general(t, n);
      CHECK(lad.logdet.log_modulus ==
            doctest::Approx(gen.log_modulus).epsilon(1e-10));
      // phases agree mod 2pi
      double d = std::remainder(lad.logdet.phase - gen.phase,
                                2.0 * std::numbers::pi);
      CHECK(std::abs(d) < 1e-9);
      CHECK(int(lad.ratios.size()) == n);
    }
  }
}

TEST_CASE("scaling law on the determinant") {
  Rng rng{31};
  CoeffTable t;
  t.K = 64;
  t.c.resize(129);
  for (auto& v : t.c) v = cplx(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
  t.c[64] = cplx(3.0, 0.0);
  double c = 2.31;
  CoeffTable scaled = t;
  for (auto& v : scaled.c) v *= c;
  for (int n : {2, 17, 64}) {
    LogDet a = logdet_general(t, n);
    LogDet b = logdet_general(scaled, n);
    CHECK(std::abs(b.log_modulus - a.log_modulus - n * std::log(c)) <
          1e-9 * std::max(1.0, std::abs(a.log_modulus)));
  }
}

TEST_CASE("scale correction reconstructs small determinants") {
  // LogDet of a scaled table must reproduce the unscaled determinant
  Rng rng{37};
  CoeffTable t;
  t.K = 6;
  t.c.resize(13);
  for (auto& v : t.c) v = cplx(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
  t.c[6] = cplx(2.0, 0.0);
  CoeffTable scaled = t;
  scaled.s_star = 1.7;
  for (auto& v : scaled.c) v *= std::exp(-1.7);
  for (int n : {2, 4, 6}) {
    auto m = build_toeplitz(t, n);
    cplx truth = cofactor_det(m, n);
    LogDet ld = logdet_general(scaled, n);
    cplx got = std::exp(cplx(ld.total_log_modulus(), ld.phase));
    CHECK(std::abs(got - truth) < 1e-9 * std::abs(truth));
  }
}
