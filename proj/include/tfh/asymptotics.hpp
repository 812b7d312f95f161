#pragma once

#include "tfh/equilibrium.hpp"
#include "tfh/symbol.hpp"

namespace tfh {

/// Constants of one asymptotic expansion of log D_n (or of a log-MGF),
/// together with the predicted error exponent.
struct AsymptoticExpansion {
  enum class Kind { thm11, thm41, prop44, thm17 };
  Kind kind = Kind::thm11;
  std::vector<cplx> constants;
  double error_exponent = -1.0;

  /// Assembles the predicted log value at size n (no error term).
  cplx predict_log(double n) const;
};

/// Full expansion of log D_n: C1 n^2 + C2 n + C3 log n + C4.
/// Requires a regular equilibrium density (throws std::domain_error).
AsymptoticExpansion thm11_constants(const SymbolSpec& spec);

/// V = 0 expansion: D2 n + D3 log n + D4.
AsymptoticExpansion thm41_constants(const TrigPolynomial& W,
                                    const std::vector<Singularity>& sings);

/// Potential contribution log D_n(V)/D_n(0): c1 n^2 + c2 n + c3.
AsymptoticExpansion prop44_constants(const SymbolSpec& spec);

/// Inputs of the moment-generating-function expansion: alphas has one entry
/// per singular point including theta = 0 first; us/thetas cover k = 1..m
/// (u_0 = -sum u_k is implied).
struct MgfParams {
  TrigPolynomial V;
  TrigPolynomial W;
  std::vector<cplx> alphas;
  std::vector<cplx> us;
  std::vector<double> thetas;
};

struct Thm17Expansion {
  AsymptoticExpansion expansion;  // C~1 n + C~2 log n + C~3
  std::vector<cplx> betas;        // u_k/(2 pi i) for k = 0..m
  cplx prefactor_exponent;        // sum_{k>=1} (-i beta_k theta_k), per unit n
};

Thm17Expansion thm17_constants(const MgfParams& p);

enum class StatKind { smooth, log_abs, counting };

/// Predicted cumulants (orders 1..4) of the three linear statistics.
/// `theta` is the singular location for log_abs/counting; ignored for smooth.
std::vector<double> predicted_cumulants(StatKind kind, const TrigPolynomial& V,
                                        const TrigPolynomial& W, double theta,
                                        int n);

/// Classical locations eta_1..eta_n: cdf_mu(eta_k) = k/n, eta_n = 2 pi.
std::vector<double> classical_locations(const EquilibriumDensity& psi, int n);

}  // namespace tfh
