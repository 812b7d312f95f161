#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "tfh/mcmc.hpp"
#include "tfh/mgf.hpp"
#include "tfh/quadrature.hpp"

using namespace tfh;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;

MgfQuery counting_query(const TrigPolynomial& V, double u, double theta,
                        int n) {
  MgfQuery q;
  q.n = n;
  q.params.V = V;
  q.params.alphas = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
  q.params.us = {cplx(u, 0.0)};
  q.params.thetas = {theta};
  return q;
}
}  // namespace

TEST_CASE("exact MGF trivial values") {
  MgfQuery q;
  q.n = 16;
  q.params.V = TrigPolynomial::symmetric_pair(0.2);
  q.params.alphas = {cplx(0.0, 0.0)};
  CHECK(std::abs(exact_log_mgf(q)) < 1e-10);
}

TEST_CASE("smooth MGF equals the W determinant ratio") {
  TrigPolynomial V = TrigPolynomial::symmetric_pair(0.15);
  TrigPolynomial W = TrigPolynomial::symmetric_pair(0.2);
  int n = 24;
  MgfQuery q;
  q.n = n;
  q.params.V = V;
  q.params.W = W;
  q.params.alphas = {cplx(0.0, 0.0)};
  cplx lhs = exact_log_mgf(q);
  SymbolSpec num = SymbolSpec::make(V, W, {}, n);
  SymbolSpec den = SymbolSpec::make(V, {}, {}, n);
  LogDet a = logdet_levinson(fourier_coeffs(num, n, 1e-13), n).logdet;
  LogDet b = logdet_levinson(fourier_coeffs(den, n, 1e-13), n).logdet;
  CHECK(std::abs(lhs - cplx(a.total_log_modulus() - b.total_log_modulus(),
                            0.0)) < 1e-10);
}

TEST_CASE("counting statistic mean at the symmetric point") {
  // kappa_1 = n/2 by the phi -> 2pi - phi symmetry
  auto kappa = exact_cumulants(
      StatQuery{StatKind::counting, {}, {}, kPi, 64}, 2);
  CHECK(kappa[0] == doctest::Approx(32.0).epsilon(1e-7));

  // log E[e^{u N}] - u n/2 is even in u for V = 0, theta = pi
  LogDet den = logdet_levinson(
      fourier_coeffs(SymbolSpec::make({}, {}, {}, 32), 32, 1e-13), 32).logdet;
  for (double u : {0.15, 0.4}) {
    cplx gp = exact_log_mgf(counting_query({}, u, kPi, 32));
    cplx gm = exact_log_mgf(counting_query({}, -u, kPi, 32));
    double even_resid =
        std::abs((gp.real() - u * 16.0) - (gm.real() + u * 16.0));
    CHECK(even_resid < 1e-9);
  }
  (void)den;
}

TEST_CASE("log-convexity of the MGF in u") {
  TrigPolynomial V = TrigPolynomial::symmetric_pair(0.25);
  double h = 0.1;
  double g0 = exact_log_mgf(counting_query(V, -h, 2.0, 24)).real();
  double g1 = exact_log_mgf(counting_query(V, 0.0, 2.0, 24)).real();
  double g2 = exact_log_mgf(counting_query(V, h, 2.0, 24)).real();
  CHECK(g0 + g2 - 2.0 * g1 >= 0.0);
}

TEST_CASE("smooth statistic cumulants against the Szego prediction") {
  TrigPolynomial W = TrigPolynomial::symmetric_pair(0.3);
  StatQuery q{StatKind::smooth, {}, W, 0.0, 128};
  auto kappa = exact_cumulants(q, 2);
  // Var -> 2 sum l W_l W_{-l} = 0.18 with O(1/n) error
  CHECK(std::abs(kappa[1] - 0.18) < 2e-3);
  CHECK(std::abs(kappa[0]) < 1e-6);  // mean = n W_0 integral = 0
}

TEST_CASE("counting mean tracks the equilibrium cdf") {
  TrigPolynomial V = TrigPolynomial::symmetric_pair(0.25);
  auto psi = equilibrium_density(V);
  int n = 96;
  StatQuery q{StatKind::counting, V, {}, 2.4, n};
  auto kappa = exact_cumulants(q, 2);
  CHECK(std::abs(kappa[0] - n * cdf_mu(psi, 2.4)) < 0.05);
}

TEST_CASE("convergence study on the pure Fisher-Hartwig case") {
  SymbolSpec spec = SymbolSpec::make({}, {}, {}, 0);
  spec.singularities[0].alpha = cplx(1.0, 0.0);
  auto study = convergence_study(spec, {8, 16, 32, 64}, Target::thm41, 1e-12);
  REQUIRE(study.rows.size() == 4);
  // diff decays roughly like 1/n
  CHECK(study.rows[3].abs_diff < study.rows[0].abs_diff);
  CHECK(study.fit_points >= 2);
  CHECK(study.slope < -0.5);
  CHECK(study.slope > -1.5);
}

TEST_CASE("MCMC pair moment against 2d quadrature at n = 2") {
  // E |e^{i phi1} - e^{i phi2}|^2 under the n = 2 log-gas with V = 0,
  // by tensor Gauss-Legendre quadrature of the density |.|^2 / Z
  const QuadRule& gl = gauss_legendre(32);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      double a = kPi * (gl.x[i] + 1.0);
      double b = kPi * (gl.x[j] + 1.0);
      double w = gl.w[i] * gl.w[j];
      double pair = std::norm(std::polar(1.0, a) - std::polar(1.0, b));
      num += w * pair * pair;
      den += w * pair;
    }
  }
  double oracle = num / den;
  CHECK(oracle == doctest::Approx(3.0).epsilon(1e-10));

  auto batch = mcmc_sample({}, 2, 8, 4000, 99);
  double acc = 0.0;
  long cnt = 0;
  for (int c = 0; c < batch.chains; ++c) {
    for (int s = 0; s < batch.samples; ++s) {
      const double* x = batch.sample(c, s);
      acc += std::norm(std::polar(1.0, x[0]) - std::polar(1.0, x[1]));
      ++cnt;
    }
  }
  acc /= cnt;
  // generous 3-sigma-ish band for correlated draws
  CHECK(std::abs(acc - oracle) < 0.25);
}

TEST_CASE("MCMC counting mean at the symmetric point") {
  auto batch = mcmc_sample({}, 16, 8, 1500, 5);
  CHECK(batch.acceptance_rate > 0.15);
  CHECK(batch.acceptance_rate < 0.75);
  auto psi = equilibrium_density(TrigPolynomial{});
  auto rep = empirical_statistics(batch, psi, kPi);
  CHECK(std::abs(rep.count_mean - 8.0) < 4.0 * rep.count_mean_se + 0.05);
  for (std::size_t e = 1; e < rep.epsilons.size(); ++e) {
    CHECK(rep.rigidity_counting[e] >= rep.rigidity_counting[e - 1] - 1e-12);
    CHECK(rep.rigidity_ordered[e] >= rep.rigidity_ordered[e - 1] - 1e-12);
  }
  CHECK(rep.sup_mean > 0.0);
}

TEST_CASE("proposal kernel symmetry and detailed balance at n = 2") {
  // wrapped-Gaussian proposal density is symmetric in (x, y)
  auto wrapped_normal = [](double x, double y, double sigma) {
    double d = std::remainder(y - x, kTau);
    double acc = 0.0;
    for (int m = -6; m <= 6; ++m) {
      double u = (d + kTau * m) / sigma;
      acc += std::exp(-0.5 * u * u);
    }
    return acc / (sigma * std::sqrt(kTau));
  };
  for (double x : {0.3, 2.0, 5.9}) {
    for (double y : {0.1, 3.3}) {
      CHECK(std::abs(wrapped_normal(x, y, 0.7) - wrapped_normal(y, x, 0.7)) <
            1e-14);
    }
  }
  // pi(x) T(x -> y) = pi(y) T(y -> x) for the Metropolis kernel on the
  // discretized two-angle state space
  auto logpi = [](double a, double b) {
    return 2.0 * std::log(std::abs(2.0 * std::sin(0.5 * (a - b))));
  };
  const int grid = 12;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      if (i == j) continue;
      double xa = kTau * i / grid, xb = kTau * (i + 5) / (grid + 3);
      double ya = kTau * j / grid, yb = xb;
      double q = wrapped_normal(xa, ya, 0.7);
      double pix = logpi(xa, xb), piy = logpi(ya, yb);
      double lhs = std::exp(pix) * q * std::min(1.0, std::exp(piy - pix));
      double rhs = std::exp(piy) * q * std::min(1.0, std::exp(pix - piy));
      CHECK(std::abs(lhs - rhs) < 1e-13 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("sample batch round trip") {
  auto batch = mcmc_sample(TrigPolynomial::symmetric_pair(0.2), 8, 3, 200, 17);
  std::string path = "roundtrip_samples.bin";
  save_batch(batch, path);
  auto back = load_batch(path);
  CHECK(back.n == batch.n);
  CHECK(back.chains == batch.chains);
  CHECK(back.samples == batch.samples);
  CHECK(back.seed == batch.seed);
  REQUIRE(back.angles.size() == batch.angles.size());
  for (std::size_t i = 0; i < batch.angles.size(); ++i) {
    CHECK(back.angles[i] == batch.angles[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("determinism of the sampler across thread modes") {
  TrigPolynomial V = TrigPolynomial::symmetric_pair(0.25);
  auto a = mcmc_sample(V, 12, 4, 120, 31, false);
  auto b = mcmc_sample(V, 12, 4, 120, 31, true);
  REQUIRE(a.angles.size() == b.angles.size());
  for (std::size_t i = 0; i < a.angles.size(); ++i) {
    CHECK(a.angles[i] == b.angles[i]);
  }
}
