#pragma once

#include "tfh/trig_poly.hpp"

namespace tfh {

/// Equilibrium density psi of a real-analytic potential V on the unit
/// circle, psi_k = -|k| V_k / (2 pi) for k != 0 and psi_0 = 1/(2 pi).
/// `regular` means psi > 0 everywhere, the one-cut regular condition.
struct EquilibriumDensity {
  TrigPolynomial psi;
  double min_value = 0.0;
  double argmin_theta = 0.0;
  bool regular = false;

  double eval(double theta) const { return psi.eval(theta).real(); }
};

EquilibriumDensity equilibrium_density(const TrigPolynomial& V);

/// Integral of h against the measure psi(e^{i theta}) d theta over [0, 2pi],
/// computed exactly by coefficient pairing: 2 pi sum_k h_k psi_{-k}.
cplx measure_integral(const TrigPolynomial& h, const EquilibriumDensity& psi);

/// CDF of the equilibrium measure: integral of psi over [0, theta].
double cdf_mu(const EquilibriumDensity& psi, double theta);

/// Integral of log|e^{i phi} - z| against the equilibrium measure for |z|=1,
/// summed termwise through the Fourier series of the log kernel. Equals
/// (V(z) - V_0)/2 when psi comes from V (Euler-Lagrange identity).
double log_kernel_integral(const EquilibriumDensity& psi, cplx z);

enum class PvMode { derivative, function };

/// Principal-value Cauchy integrals of Lemma-type closed forms:
/// derivative mode: (1/(i pi)) pv-int p'(w)/(w-z) dw = (1 - 2 pi psi_p(z))/z,
/// function  mode: p_0 + 2 i Im p_+(z).
cplx pv_cauchy(const TrigPolynomial& p, cplx z, PvMode mode);

}  // namespace tfh
