#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tfh {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Closed-form vs oracle identity suite: both equilibrium-measure identities,
/// both principal-value Cauchy identities, the determinant scaling law, and
/// the full/potential/V=0 decomposition of the asymptotic constants.
std::vector<CheckResult> verify_identities(std::uint64_t seed = 2024);

/// Orthogonal-polynomial suite at oracle scale: Christoffel-Darboux check on
/// Y, the deformation differential identity, and the kappa product formula.
std::vector<CheckResult> verify_section2();

/// Barnes G values, recurrence residuals on a strip, derivative constants.
std::vector<CheckResult> verify_special();

/// Jump and root symbol Fourier coefficients against closed forms.
std::vector<CheckResult> verify_quadrature();

std::vector<CheckResult> verify_suite(const std::string& name,
                                      std::uint64_t seed = 2024);

}  // namespace tfh
