#pragma once

#include <vector>

#include "tfh/symbol.hpp"

namespace tfh {

/// Log of a Toeplitz determinant. `log_modulus` and `phase` describe the
/// determinant of the *scaled* symbol; adding `scale_correction` (= n s_star)
/// to the log-modulus recovers the unscaled D_n. The phase is accumulated
/// continuously, never reduced mod 2pi.
struct LogDet {
  double log_modulus = 0.0;
  double phase = 0.0;
  double scale_correction = 0.0;

  double total_log_modulus() const { return log_modulus + scale_correction; }
  cplx log() const { return {total_log_modulus(), phase}; }
};

/// Dense n x n Toeplitz matrix, row-major, entry (j,k) = f_{j-k}.
std::vector<cplx> build_toeplitz(const CoeffTable& coeffs, int n);

/// Complex LU with partial pivoting. Throws on a pivot below 1e-300 relative
/// to the matrix scale (determinant indistinguishable from zero).
LogDet logdet_general(const CoeffTable& coeffs, int n);

struct LevinsonResult {
  LogDet logdet;
  std::vector<cplx> reflections;  // all have modulus < 1 on HPD input
};

/// Szego/Levinson recursion for Hermitian positive-definite coefficient
/// tables; the prediction-error variances are exactly kappa_j^{-2}.
/// Throws on breakdown (non-HPD input).
LevinsonResult logdet_levinson(const CoeffTable& coeffs, int n);

struct LadderResult {
  LogDet logdet;
  std::vector<cplx> ratios;  // D_{k+1}/D_k of the scaled symbol, k = 0..n-1
};

/// Biorthogonal Levinson recursion for general (non-Hermitian) coefficient
/// tables. Produces every ratio D_{k+1}/D_k, so the phase of D_n is tracked
/// continuously along the n-ladder. Throws on breakdown (vanishing minor).
LadderResult logdet_ladder(const CoeffTable& coeffs, int n);

/// Picks the Levinson path on Hermitian tables, the ladder otherwise.
LogDet logdet_auto(const CoeffTable& coeffs, int n);

}  // namespace tfh
