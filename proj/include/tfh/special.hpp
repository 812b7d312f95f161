#pragma once

#include <complex>

namespace tfh {

using cplx = std::complex<double>;

/// Euler's constant gamma_E.
double euler_gamma();

/// Riemann zeta at an integer s >= 2, cached after first use.
double zeta(int s);

/// Principal log Gamma for Re z > 0 (Stirling series with argument shifting).
cplx log_gamma(cplx z);

/// Principal log of the Barnes G-function for Re z > 0.
/// Near z = 1 the Taylor series of log G(1+w) is used; elsewhere the value is
/// reached through the recurrence G(z+1) = Gamma(z) G(z) and, for arguments
/// far from the real axis, the large-z expansion.
cplx log_barnes_g(cplx z);

/// j-th derivative of log G at 1:
///   j = 1: (log 2pi - 1)/2,  j = 2: -(1 + gamma_E),
///   j >= 3: (-1)^{j-1} (j-1)! zeta(j-1).
double log_g_deriv_at_1(int j);

}  // namespace tfh
