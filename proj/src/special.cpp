#include "tfh/special.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tfh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
// zeta'(-1) = 1/12 - log A (Glaisher-Kinkelin).
constexpr double kZetaPrimeMinus1 = -0.16542114370045092921391966024278064;

// B_{2k}/(2k(2k-1)) for the Stirling series of log Gamma.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,           -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0};

// B_{2k+2}/(2k(2k+1)(2k+2)) for the large-z expansion of log G(z+1).
constexpr std::array<double, 6> kBarnesAsym = {
    -1.0 / 720.0,     1.0 / 5040.0,        -1.0 / 10080.0,
    1.0 / 9504.0,     -691.0 / 3603600.0,  1.0 / 1872.0};

// B_{2k} for Euler-Maclaurin.
constexpr std::array<double, 9> kBernoulli2k = {
    1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,      -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0};

double zeta_euler_maclaurin(int s) {
  const int N = 18;
  double sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::pow(double(n), -s);
  sum += 0.5 * std::pow(double(N), -s);
  sum += std::pow(double(N), 1.0 - s) / (s - 1.0);
  // correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  double rising = double(s);  // s (s+1) ... accumulated
  double fact = 2.0;          // (2k)!
  for (std::size_t k = 1; k <= kBernoulli2k.size(); ++k) {
    double term = kBernoulli2k[k - 1] / fact * rising *
                  std::pow(double(N), -double(s) - 2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-20 * sum) break;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

const std::vector<double>& zeta_cache() {
  static std::vector<double> cache = [] {
    std::vector<double> v(81, 0.0);
    for (int s = 2; s <= 80; ++s) v[s] = zeta_euler_maclaurin(s);
    return v;
  }();
  return cache;
}

cplx log_gamma_stirling(cplx z) {
  cplx lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
  cplx zinv2 = 1.0 / (z * z);
  cplx zpow = 1.0 / z;
  for (double c : kStirling) {
    lg += c * zpow;
    zpow *= zinv2;
  }
  return lg;
}

// Taylor series of log G(1+w), |w| <= 1/2.
cplx log_barnes_g_taylor(cplx w) {
  cplx acc = w * (std::log(2.0 * kPi) - 1.0) / 2.0 -
             w * w * (1.0 + kEulerGamma) / 2.0;
  cplx wpow = w * w;
  double sign = 1.0;  // (-1)^{j-1} with j starting at 3
  for (int j = 3; j <= 80; ++j) {
    wpow *= w;
    cplx term = sign * zeta(j - 1) / double(j) * wpow;
    acc += term;
    if (std::abs(term) < 1e-17 * (1.0 + std::abs(acc))) break;
    sign = -sign;
  }
  return acc;
}

// Large-z expansion of log G(z+1), valid for |z| >= ~15.
cplx log_barnes_g_asymptotic_shifted(cplx z) {
  cplx w = z - 1.0;
  cplx lw = std::log(w);
  cplx acc = 0.5 * w * w * (lw - 1.5) + 0.5 * w * std::log(2.0 * kPi) -
             lw / 12.0 + kZetaPrimeMinus1;
  cplx winv2 = 1.0 / (w * w);
  cplx wpow = winv2;
  for (double c : kBarnesAsym) {
    acc += c * wpow;
    wpow *= winv2;
  }
  return acc;
}

}  // namespace

double euler_gamma() { return kEulerGamma; }

double zeta(int s) {
  if (s < 2) throw std::domain_error("zeta: need s >= 2");
  if (s <= 80) return zeta_cache()[s];
  return zeta_euler_maclaurin(s);
}

cplx log_gamma(cplx z) {
  if (z.real() <= 0.0) {
    throw std::domain_error("log_gamma: need Re z > 0");
  }
  // Shift into |z| >= 15 where the Stirling tail is below 1e-16.
  cplx shift_log(0.0, 0.0);
  while (std::abs(z) < 15.0) {
    shift_log += std::log(z);
    z += 1.0;
  }
  return log_gamma_stirling(z) - shift_log;
}

cplx log_barnes_g(cplx z) {
  if (z.real() <= 0.0) {
    throw std::domain_error("log_barnes_g: need Re z > 0");
  }
  if (std::abs(z.imag()) <= 0.45) {
    // Reach the Taylor disc |z - 1| <= 1/2 with G(z+1) = Gamma(z) G(z).
    cplx shift(0.0, 0.0);
    while (z.real() > 1.5) {
      z -= 1.0;
      shift += log_gamma(z);
    }
    while (z.real() < 0.5) {
      shift -= log_gamma(z);
      z += 1.0;
    }
    return shift + log_barnes_g_taylor(z - 1.0);
  }
  // Far from the real axis the Taylor disc is unreachable by unit shifts;
  // push z up and use the large-argument expansion instead.
  cplx shift(0.0, 0.0);
  while (std::abs(z - 1.0) < 16.0) {
    shift -= log_gamma(z);
    z += 1.0;
  }
  return shift + log_barnes_g_asymptotic_shifted(z);
}

double log_g_deriv_at_1(int j) {
  if (j < 1) throw std::domain_error("log_g_deriv_at_1: need j >= 1");
  if (j == 1) return (std::log(2.0 * kPi) - 1.0) / 2.0;
  if (j == 2) return -(1.0 + kEulerGamma);
  double fact = 1.0;
  for (int i = 2; i < j; ++i) fact *= i;
  double sign = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^{j-1}
  return sign * fact * zeta(j - 1);
}

}  // namespace tfh
