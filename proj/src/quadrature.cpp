#include "tfh/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tfh {

namespace {

// Jacobi polynomial P_n^{(a,b)}(x) and derivative via the three-term
// recurrence.
void jacobi_eval(int n, double a, double b, double x, double& p, double& dp) {
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  double pm1 = 1.0;
  double pc = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 2; k <= n; ++k) {
    double a1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
    double a2 = (2.0 * k + a + b - 1.0) * (a * a - b * b);
    double a3 = (2.0 * k + a + b - 2.0) * (2.0 * k + a + b - 1.0) *
                (2.0 * k + a + b);
    double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
    double pn = ((a2 + a3 * x) * pc - a4 * pm1) / a1;
    pm1 = pc;
    pc = pn;
  }
  p = pc;
  // derivative from the mixed relation; pm1 holds P_{n-1}
  double den = (2.0 * n + a + b) * (1.0 - x * x);
  dp = (n * (a - b - (2.0 * n + a + b) * x) * pc +
        2.0 * (n + a) * (n + b) * pm1) /
       den;
}

QuadRule jacobi_rule(int p, double a, double b) {
  QuadRule rule;
  rule.x.resize(p);
  rule.w.resize(p);
  // log of the weight prefactor 2^{a+b} Gamma(n+a+1) Gamma(n+b+1) /
  // (Gamma(n+a+b+1) Gamma(n+2)); roots never reach +-1 so lgamma is safe.
  double logc = (a + b) * std::log(2.0) + std::lgamma(p + a + 1.0) +
                std::lgamma(p + b + 1.0) - std::lgamma(p + a + b + 1.0) -
                std::lgamma(p + 2.0);
  for (int i = 1; i <= p; ++i) {
    double x = std::cos(std::numbers::pi * (0.5 * a + i - 0.25) /
                        (0.5 * (1.0 + a + b) + p));
    double pn = 0.0, dpn = 1.0;
    for (int it = 0; it < 200; ++it) {
      jacobi_eval(p, a, b, x, pn, dpn);
      double step = pn / dpn;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    jacobi_eval(p, a, b, x, pn, dpn);
    double pn1, dpn1;
    jacobi_eval(p + 1, a, b, x, pn1, dpn1);
    rule.x[i - 1] = x;
    rule.w[i - 1] = -std::exp(logc) * (2.0 * p + a + b + 2.0) /
                    ((p + a + b + 1.0) * pn1 * dpn);
  }
  return rule;
}

}  // namespace

const QuadRule& gauss_legendre(int p) {
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) {
    it = cache.emplace(p, jacobi_rule(p, 0.0, 0.0)).first;
  }
  return it->second;
}

QuadRule gauss_jacobi_left(int p, double beta) {
  if (beta <= -1.0) {
    throw std::domain_error("gauss_jacobi_left: need exponent > -1");
  }
  return jacobi_rule(p, 0.0, beta);
}

}  // namespace tfh
