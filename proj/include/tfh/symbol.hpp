#pragma once

#include <vector>

#include "tfh/trig_poly.hpp"

namespace tfh {

/// One Fisher-Hartwig singularity at t = e^{i theta}: a root-type factor
/// |z - t|^alpha and a jump factor parameterized by beta.
struct Singularity {
  double theta = 0.0;
  cplx alpha{0.0, 0.0};
  cplx beta{0.0, 0.0};

  cplx t() const;
  bool trivial() const { return alpha == cplx(0.0) && beta == cplx(0.0); }
};

/// Full symbol f(z) = e^{-nV(z)} e^{W(z)} omega(z) on the unit circle.
/// A singularity at theta = 0 is always present structurally (its parameters
/// may be zero).
struct SymbolSpec {
  TrigPolynomial V;
  TrigPolynomial W;
  std::vector<Singularity> singularities;
  int n = 0;

  static SymbolSpec make(TrigPolynomial V, TrigPolynomial W,
                         std::vector<Singularity> sings, int n);

  void validate() const;

  /// True when the symbol is real and positive a.e. on the circle: W real on
  /// the circle, every alpha real, every beta purely imaginary. Gates the
  /// Hermitian determinant path.
  bool hermitian_fast_path(double tol = 1e-12) const;
};

/// |e^{i theta} - t|^alpha with the principal real power of the nonnegative
/// base. Throws at theta = theta_k when Re alpha < 0 (pole).
cplx omega_alpha(const Singularity& s, double theta);

/// e^{i(theta - theta_k) beta} times e^{+i pi beta} for theta < theta_k and
/// e^{-i pi beta} for theta >= theta_k.
cplx omega_beta(const Singularity& s, double theta);

struct LogVal {
  double log_mod = 0.0;
  double phase = 0.0;
};

/// log|f| and accumulated phase at e^{i theta}; never overflows for large n.
LogVal log_symbol_eval(const SymbolSpec& spec, double theta);
cplx symbol_eval(const SymbolSpec& spec, double theta);

/// Fourier coefficients of the scaled symbol e^{-s_star} f for |k| <= K.
/// log D_n(f) = log D_n(scaled) + n * s_star.
struct CoeffTable {
  int K = 0;
  std::vector<cplx> c;  // index k + K
  double s_star = 0.0;
  double achieved_tol = 0.0;

  cplx at(int k) const { return c[static_cast<std::size_t>(k + K)]; }
  bool hermitian(double tol = 1e-9) const;
};

/// Panel quadrature of f_k = (1/2pi) int f(e^{i theta}) e^{-ik theta} dtheta.
/// Panels are split at every singular point; panels touching a root-type
/// singularity use Gauss-Jacobi nodes with the endpoint exponent Re alpha and
/// geometric grading; smooth panels use Gauss-Legendre with dyadic
/// subdivision until two consecutive refinement levels agree below tol.
/// Throws std::runtime_error if the panel budget is exhausted.
CoeffTable fourier_coeffs(const SymbolSpec& spec, int K, double tol = 1e-12,
                          bool parallel = true);

/// Serial reference implementation (same algorithm, no OpenMP).
CoeffTable fourier_coeffs_serial(const SymbolSpec& spec, int K,
                                 double tol = 1e-12);

/// Quadrature grid against the scaled symbol: for smooth h,
///   int_0^{2pi} h(theta) f(e^{i theta}) dtheta
///     ~ exp(s_star) * sum_q mu[q] h(theta[q]).
struct SymbolGrid {
  std::vector<double> theta;
  std::vector<cplx> mu;
  double s_star = 0.0;
};

/// `focus_theta`/`focus_width` force finer panels near one angle (used for
/// Cauchy transforms with a pole near the circle); negative focus disables.
SymbolGrid symbol_grid(const SymbolSpec& spec, double max_width,
                       int extra_grading = 0, double focus_theta = -1.0,
                       double focus_width = 0.0);

}  // namespace tfh
