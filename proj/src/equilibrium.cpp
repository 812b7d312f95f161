#include "tfh/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tfh {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTau);
  if (theta < 0) theta += kTau;
  return theta;
}
}  // namespace

EquilibriumDensity equilibrium_density(const TrigPolynomial& V) {
  if (!V.real_on_circle(1e-12)) {
    throw std::invalid_argument("equilibrium_density: V must be real on the circle");
  }
  std::map<int, cplx> psi_coeffs;
  psi_coeffs[0] = cplx(1.0 / kTau, 0.0);
  for (const auto& [k, c] : V.coeffs()) {
    if (k != 0) psi_coeffs[k] = -double(std::abs(k)) * c / kTau;
  }
  EquilibriumDensity out;
  out.psi = TrigPolynomial(std::move(psi_coeffs));

  // psi is a low-degree trig polynomial: dense sampling locates the minimum
  // basin, Newton on psi' polishes the best candidates.
  const int grid = 4096;
  std::vector<std::pair<double, double>> samples(grid);
  for (int j = 0; j < grid; ++j) {
    double theta = kTau * j / grid;
    samples[j] = {out.psi.eval(theta).real(), theta};
  }
  std::partial_sort(samples.begin(), samples.begin() + 8, samples.end());

  TrigPolynomial dpsi, ddpsi;
  for (const auto& [k, c] : out.psi.coeffs()) {
    dpsi.set_coeff(k, cplx(0.0, k) * c);
    ddpsi.set_coeff(k, cplx(-double(k) * k, 0.0) * c);
  }
  double best_val = samples[0].first;
  double best_theta = samples[0].second;
  for (int c = 0; c < 8; ++c) {
    double theta = samples[c].second;
    for (int it = 0; it < 60; ++it) {
      double g = dpsi.eval(theta).real();
      double h = ddpsi.eval(theta).real();
      if (h <= 0.0) break;  // not in a convex basin
      double step = g / h;
      theta -= step;
      if (std::abs(step) < 1e-13) break;
    }
    theta = wrap_angle(theta);
    double val = out.psi.eval(theta).real();
    if (val < best_val) {
      best_val = val;
      best_theta = theta;
    }
  }
  out.min_value = best_val;
  out.argmin_theta = best_theta;
  out.regular = best_val > 0.0;
  return out;
}

cplx measure_integral(const TrigPolynomial& h, const EquilibriumDensity& psi) {
  cplx sum(0.0, 0.0);
  for (const auto& [k, c] : h.coeffs()) {
    sum += c * psi.psi.coeff(-k);
  }
  return kTau * sum;
}

double cdf_mu(const EquilibriumDensity& psi, double theta) {
  if (theta < -1e-12 || theta > kTau + 1e-12) {
    throw std::domain_error("cdf_mu: theta outside [0, 2pi]");
  }
  cplx acc = psi.psi.coeff(0) * theta;
  for (const auto& [k, c] : psi.psi.coeffs()) {
    if (k == 0) continue;
    // integral of e^{ik phi} over [0, theta]
    acc += c * (std::polar(1.0, k * theta) - 1.0) / cplx(0.0, double(k));
  }
  return acc.real();
}

double log_kernel_integral(const EquilibriumDensity& psi, cplx z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw std::domain_error("log_kernel_integral: z must lie on the unit circle");
  }
  // log|e^{i theta} - z| = -sum_{k>=1} cos(k(theta - phi))/k with z = e^{i phi};
  // pairing against psi's finite table leaves -sum_k (2pi/k) Re(psi_k e^{ik phi}).
  double phi = std::arg(z);
  double sum = 0.0;
  for (const auto& [k, c] : psi.psi.coeffs()) {
    if (k <= 0) continue;
    sum -= kTau / k * (c * std::polar(1.0, k * phi)).real();
  }
  return sum;
}

cplx pv_cauchy(const TrigPolynomial& p, cplx z, PvMode mode) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw std::domain_error("pv_cauchy: z must lie on the unit circle");
  }
  if (!p.real_on_circle(1e-12)) {
    throw std::invalid_argument("pv_cauchy: p must be real on the circle");
  }
  if (mode == PvMode::derivative) {
    EquilibriumDensity psi = equilibrium_density(p);
    return (1.0 - kTau * psi.eval(std::arg(z))) / z;
  }
  auto split = p.laurent_split();
  return split.c0 + cplx(0.0, 2.0) * split.plus.eval_at(z).imag();
}

}  // namespace tfh
