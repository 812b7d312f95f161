#include "tfh/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfh/special.hpp"

namespace tfh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;
const cplx kI(0.0, 1.0);

double log_chord_between(double ta, double tb) {
  return std::log(2.0 * std::abs(std::sin(0.5 * (ta - tb))));
}

cplx w_pair_sum(const TrigPolynomial& W) {
  cplx acc(0.0, 0.0);
  for (const auto& [k, c] : W.coeffs()) {
    if (k >= 1) acc += double(k) * c * W.coeff(-k);
  }
  return acc;
}

cplx barnes_ratio(cplx alpha, cplx beta) {
  return log_barnes_g(1.0 + 0.5 * alpha + beta) +
         log_barnes_g(1.0 + 0.5 * alpha - beta) - log_barnes_g(1.0 + alpha);
}

double beta_max(const std::vector<Singularity>& sings) {
  double m = 0.0;
  for (const auto& s : sings) m = std::max(m, std::abs(s.beta.real()));
  return m;
}

}  // namespace

cplx AsymptoticExpansion::predict_log(double n) const {
  switch (kind) {
    case Kind::thm11:
      return constants[0] * n * n + constants[1] * n +
             constants[2] * std::log(n) + constants[3];
    case Kind::thm41:
      return constants[0] * n + constants[1] * std::log(n) + constants[2];
    case Kind::prop44:
      return constants[0] * n * n + constants[1] * n + constants[2];
    case Kind::thm17:
      return constants[0] * n + constants[1] * std::log(n) + constants[2];
  }
  return {};
}

AsymptoticExpansion thm11_constants(const SymbolSpec& spec) {
  EquilibriumDensity psi = equilibrium_density(spec.V);
  if (!psi.regular) {
    throw std::domain_error("thm11_constants: potential is not one-cut regular");
  }
  auto vs = spec.V.laurent_split();
  auto ws = spec.W.laurent_split();
  const auto& sings = spec.singularities;

  cplx C1 = -0.5 * vs.c0 - 0.5 * measure_integral(spec.V, psi);

  cplx C2(0.0, 0.0), C3(0.0, 0.0), C4(0.0, 0.0);
  C2 += measure_integral(spec.W, psi);
  C4 += w_pair_sum(spec.W);
  for (const auto& s : sings) {
    cplx t = s.t();
    C2 += 0.5 * s.alpha * (spec.V.eval(s.theta) - vs.c0);
    C2 -= 2.0 * kI * s.beta * vs.plus.eval_at(t).imag();
    C3 += 0.25 * s.alpha * s.alpha - s.beta * s.beta;
    cplx wp = ws.plus.eval_at(t), wm = ws.minus.eval_at(t);
    C4 += -0.5 * s.alpha * (wp + wm) + s.beta * (wp - wm);
    C4 += barnes_ratio(s.alpha, s.beta);
    // potential coupling: -(b^2 - a^2/4) log(2 pi psi(t_k)); the deformation
    // integral of the parametrix correction evaluates to the log, and the
    // exact finite-n determinants confirm it (see the decisions ledger)
    double psit = psi.eval(s.theta);
    C4 -= (s.beta * s.beta - 0.25 * s.alpha * s.alpha) *
          std::log(kTau * psit);
  }
  for (std::size_t j = 0; j < sings.size(); ++j) {
    for (std::size_t k = j + 1; k < sings.size(); ++k) {
      const auto& sj = sings[j];
      const auto& sk = sings[k];
      C4 += 0.5 * (sj.alpha * kI * sk.beta - sk.alpha * kI * sj.beta) *
            (sk.theta - sj.theta - kPi);
      C4 += (2.0 * sj.beta * sk.beta - 0.5 * sj.alpha * sk.alpha) *
            log_chord_between(sj.theta, sk.theta);
    }
  }
  AsymptoticExpansion out;
  out.kind = AsymptoticExpansion::Kind::thm11;
  out.constants = {C1, C2, C3, C4};
  out.error_exponent = -1.0 + 2.0 * beta_max(sings);
  return out;
}

AsymptoticExpansion thm41_constants(const TrigPolynomial& W,
                                    const std::vector<Singularity>& sings_in) {
  SymbolSpec spec = SymbolSpec::make(TrigPolynomial{}, W, sings_in, 0);
  const auto& sings = spec.singularities;
  auto ws = spec.W.laurent_split();

  cplx D2 = ws.c0;
  cplx D3(0.0, 0.0), D4 = w_pair_sum(spec.W);
  for (const auto& s : sings) {
    cplx t = s.t();
    D3 += 0.25 * s.alpha * s.alpha - s.beta * s.beta;
    D4 += (s.beta - 0.5 * s.alpha) * ws.plus.eval_at(t) -
          (s.beta + 0.5 * s.alpha) * ws.minus.eval_at(t);
    D4 += barnes_ratio(s.alpha, s.beta);
  }
  for (std::size_t j = 0; j < sings.size(); ++j) {
    for (std::size_t k = j + 1; k < sings.size(); ++k) {
      const auto& sj = sings[j];
      const auto& sk = sings[k];
      D4 += 0.5 * (sj.alpha * kI * sk.beta - sk.alpha * kI * sj.beta) *
            (sk.theta - sj.theta - kPi);
      D4 += (2.0 * sj.beta * sk.beta - 0.5 * sj.alpha * sk.alpha) *
            log_chord_between(sj.theta, sk.theta);
    }
  }
  AsymptoticExpansion out;
  out.kind = AsymptoticExpansion::Kind::thm41;
  out.constants = {D2, D3, D4};
  out.error_exponent = -1.0 + 2.0 * beta_max(sings);
  return out;
}

AsymptoticExpansion prop44_constants(const SymbolSpec& spec) {
  EquilibriumDensity psi = equilibrium_density(spec.V);
  if (!psi.regular) {
    throw std::domain_error("prop44_constants: potential is not one-cut regular");
  }
  auto vs = spec.V.laurent_split();
  cplx c1 = -0.5 * vs.c0 - 0.5 * measure_integral(spec.V, psi);
  cplx c2 = measure_integral(spec.W, psi) - spec.W.coeff(0);
  cplx c3(0.0, 0.0);
  for (const auto& s : spec.singularities) {
    c2 += 0.5 * s.alpha * (spec.V.eval(s.theta) - vs.c0);
    c2 -= 2.0 * kI * s.beta * vs.plus.eval_at(s.t()).imag();
    double psit = psi.eval(s.theta);
    c3 -= (s.beta * s.beta - 0.25 * s.alpha * s.alpha) *
          std::log(kTau * psit);
  }
  AsymptoticExpansion out;
  out.kind = AsymptoticExpansion::Kind::prop44;
  out.constants = {c1, c2, c3};
  out.error_exponent = -1.0 + 2.0 * beta_max(spec.singularities);
  return out;
}

Thm17Expansion thm17_constants(const MgfParams& p) {
  const std::size_t m = p.thetas.size();
  if (p.us.size() != m || p.alphas.size() != m + 1) {
    throw std::invalid_argument("thm17_constants: inconsistent parameter sizes");
  }
  EquilibriumDensity psi = equilibrium_density(p.V);
  if (!psi.regular) {
    throw std::domain_error("thm17_constants: potential is not one-cut regular");
  }
  std::vector<double> thetas(m + 1);
  std::vector<cplx> us(m + 1);
  thetas[0] = 0.0;
  us[0] = cplx(0.0, 0.0);
  double u_max = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    thetas[k + 1] = p.thetas[k];
    us[k + 1] = p.us[k];
    us[0] -= p.us[k];
    u_max = std::max(u_max, std::abs(p.us[k].imag()));
    if (std::abs(p.us[k].imag()) >= kPi) {
      throw std::domain_error("thm17_constants: need Im u in (-pi, pi)");
    }
  }
  auto ws = p.W.laurent_split();

  cplx C1 = measure_integral(p.W, psi);
  cplx C2(0.0, 0.0), C3 = w_pair_sum(p.W);
  for (std::size_t k = 0; k <= m; ++k) {
    cplx t = std::polar(1.0, thetas[k]);
    C1 += p.alphas[k] * log_kernel_integral(psi, t);
    if (k >= 1) C1 += us[k] * cdf_mu(psi, thetas[k]);
    C2 += 0.25 * p.alphas[k] * p.alphas[k] + us[k] * us[k] / (4.0 * kPi * kPi);
    cplx wp = ws.plus.eval_at(t), wm = ws.minus.eval_at(t);
    C3 += -p.alphas[k] * 0.5 * (wp + wm);
    C3 += us[k] / kPi * (wp - wm) / (2.0 * kI);
    C3 += barnes_ratio(p.alphas[k], us[k] / (2.0 * kPi * kI));
    double psit = psi.eval(thetas[k]);
    C3 += 0.25 * (us[k] * us[k] / (kPi * kPi) + p.alphas[k] * p.alphas[k]) *
          std::log(kTau * psit);
  }
  for (std::size_t j = 0; j <= m; ++j) {
    for (std::size_t k = j + 1; k <= m; ++k) {
      C3 += (p.alphas[j] * us[k] - p.alphas[k] * us[j]) / (4.0 * kPi) *
            (thetas[k] - thetas[j] - kPi);
      C3 -= (us[j] * us[k] / (2.0 * kPi * kPi) +
             0.5 * p.alphas[j] * p.alphas[k]) *
            log_chord_between(thetas[j], thetas[k]);
    }
  }
  Thm17Expansion out;
  out.expansion.kind = AsymptoticExpansion::Kind::thm17;
  out.expansion.constants = {C1, C2, C3};
  out.expansion.error_exponent = -1.0 + u_max / kPi;
  out.betas.resize(m + 1);
  out.prefactor_exponent = cplx(0.0, 0.0);
  for (std::size_t k = 0; k <= m; ++k) {
    out.betas[k] = us[k] / (2.0 * kPi * kI);
    if (k >= 1) out.prefactor_exponent += -kI * out.betas[k] * thetas[k];
  }
  return out;
}

std::vector<double> predicted_cumulants(StatKind kind, const TrigPolynomial& V,
                                        const TrigPolynomial& W, double theta,
                                        int n) {
  EquilibriumDensity psi = equilibrium_density(V);
  if (!psi.regular) {
    throw std::domain_error("predicted_cumulants: non-regular potential");
  }
  const double logn = std::log(double(n));
  switch (kind) {
    case StatKind::smooth: {
      if (!W.real_on_circle(1e-12)) {
        throw std::domain_error("predicted_cumulants: smooth statistic needs real W");
      }
      double mean = n * measure_integral(W, psi).real();
      double var = 2.0 * w_pair_sum(W).real();
      return {mean, var, 0.0, 0.0};
    }
    case StatKind::log_abs: {
      cplx t = std::polar(1.0, theta);
      double psit = psi.eval(theta);
      double mean = n * log_kernel_integral(psi, t);
      double var = 0.5 * logn + 0.5 * (1.0 + euler_gamma()) +
                   0.5 * std::log(kTau * psit);
      double k3 = (-1.0 + 0.25) * log_g_deriv_at_1(3);
      double k4 = (-1.0 + 0.125) * log_g_deriv_at_1(4);
      return {mean, var, k3, k4};
    }
    case StatKind::counting: {
      if (theta <= 0.0 || theta >= kTau) {
        throw std::domain_error("predicted_cumulants: counting needs theta in (0, 2pi)");
      }
      cplx t = std::polar(1.0, theta);
      double psi1 = psi.eval(0.0);
      double psit = psi.eval(theta);
      double mean = n * cdf_mu(psi, theta);
      double var = (logn + 1.0 + euler_gamma() + std::log(std::abs(t - 1.0))) /
                       (kPi * kPi) +
                   (std::log(kTau * psi1) + std::log(kTau * psit)) /
                       (2.0 * kPi * kPi);
      double k4 = log_g_deriv_at_1(4) / (4.0 * std::pow(kPi, 4));
      return {mean, var, 0.0, k4};
    }
  }
  return {};
}

std::vector<double> classical_locations(const EquilibriumDensity& psi, int n) {
  if (!psi.regular) {
    throw std::domain_error("classical_locations: non-regular density");
  }
  std::vector<double> eta(n);
  double lo = 0.0;
  for (int k = 1; k <= n; ++k) {
    double target = double(k) / n;
    if (k == n) {
      eta[k - 1] = kTau;
      break;
    }
    // safeguarded Newton on the strictly increasing cdf
    double hi = kTau;
    double x = lo + (kTau - lo) * 0.5;
    for (int it = 0; it < 200; ++it) {
      double fx = cdf_mu(psi, x) - target;
      if (fx > 0) {
        hi = x;
      } else {
        lo = x;
      }
      double deriv = psi.eval(x);
      double step = fx / deriv;
      double next = x - step;
      if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
      if (std::abs(next - x) < 1e-13) {
        x = next;
        break;
      }
      x = next;
    }
    eta[k - 1] = x;
    lo = x;
  }
  return eta;
}

}  // namespace tfh
