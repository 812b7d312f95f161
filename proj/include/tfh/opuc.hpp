#pragma once

#include <array>

#include "tfh/toeplitz.hpp"

namespace tfh {

/// Orthogonal polynomials on the unit circle for a symbol f: monic
/// coefficient tables of p_k/kappa_k and phat_k/kappa_k, plus
/// kappa_k^2 = D_k / D_{k+1} of the *unscaled* symbol. The sign of kappa_k
/// itself is never needed.
struct OpucFamily {
  int k_max = 0;
  std::vector<std::vector<cplx>> monic;       // monic[k][j], degree k
  std::vector<std::vector<cplx>> monic_hat;
  std::vector<cplx> kappa_sq;                 // k = 0..k_max

  cplx eval_monic(int k, cplx z) const;
  cplx eval_monic_hat(int k, cplx z) const;
  /// Christoffel-Darboux style sum: sum_{k<n} phat_k(1/z) p_k(z).
  cplx cd_sum(int n, cplx z) const;
};

/// Brute-force construction from the bordered moment determinants; exact
/// small-scale oracle, k_max <= 8. Throws on a vanishing sub-determinant.
OpucFamily opuc_from_moments(const CoeffTable& coeffs, int k_max);

/// Same family via the Szego/Levinson-style recursion, O(k_max^2).
OpucFamily opuc_szego(const CoeffTable& coeffs, int k_max);

/// Riemann-Hilbert matrix Y(z) of the orthogonal-polynomial problem,
/// evaluated off the unit circle. The Cauchy-transform entries use the same
/// panel engine as the symbol coefficients, refined until two levels agree.
/// Throws when z is within 1e-3 of the circle.
std::array<cplx, 4> assemble_Y(const OpucFamily& family, const SymbolSpec& spec,
                               int n, cplx z, double tol = 1e-8);

struct IdentityCheck {
  cplx lhs;
  cplx rhs;
  double residual;
};

/// Lemma-style check: [Y^{-1} Y']_{21} z^{-n+1} vs sum_{k<n} phat_k(1/z) p_k(z),
/// with Y' by central differences of step fd_step * |z|.
IdentityCheck verify_cd_identity(const OpucFamily& family,
                                 const SymbolSpec& spec, int n, cplx z,
                                 double fd_step = 1e-6);

/// Differential identity in the deformation V -> sV: finite difference of
/// log D_n in s against the quadrature of the Christoffel-Darboux kernel
/// times d_s f = -nV f.
IdentityCheck verify_diff_identity(const TrigPolynomial& V,
                                   const TrigPolynomial& W,
                                   const std::vector<Singularity>& sings,
                                   int n, double s, double fd_step = 1e-5);

}  // namespace tfh
