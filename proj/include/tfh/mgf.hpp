#pragma once

#include <limits>

#include "tfh/asymptotics.hpp"
#include "tfh/toeplitz.hpp"

namespace tfh {

struct MgfQuery {
  MgfParams params;
  int n = 0;
};

/// log E[prod e^W prod |p_n(t_k)|^{alpha_k} prod e^{u_k N_n(theta_k)}],
/// computed exactly at finite n through the determinant ratio
/// D_n(alpha, beta, V, W) / D_n(0, 0, V, 0) with beta_k = u_k/(2 pi i).
/// For real u, real alpha and real W the imaginary part is asserted to be
/// below 1e-9 relative and dropped.
cplx exact_log_mgf(const MgfQuery& q, double tol = 1e-12);
cplx exact_mgf(const MgfQuery& q, double tol = 1e-12);

struct StatQuery {
  StatKind kind = StatKind::counting;
  TrigPolynomial V;
  TrigPolynomial W;     // statistic shape for `smooth`
  double theta = 0.0;   // location for `log_abs` / `counting`
  int n = 0;
};

/// Exact cumulants kappa_1..kappa_orders from central finite differences of
/// u -> log-MGF on a 9-point stencil (step h, one Richardson level).
std::vector<double> exact_cumulants(const StatQuery& q, int orders = 4,
                                    double h = 0.05, bool richardson = true);

enum class Target { thm11, thm41, thm17 };

struct ConvergenceRow {
  int n = 0;
  cplx exact;
  cplx predicted;
  double abs_diff = 0.0;
  bool floored = false;  // |diff| below the numerical floor; excluded from fit
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double slope = std::numeric_limits<double>::quiet_NaN();
  int fit_points = 0;
  static constexpr double kFloor = 1e-11;
};

/// Exact log D_n against the target expansion over an n-grid; least-squares
/// slope of log|diff| vs log n over the top half of the grid.
ConvergenceStudy convergence_study(const SymbolSpec& base,
                                   const std::vector<int>& ns, Target target,
                                   double tol = 1e-12, bool parallel = true);

/// Same for the MGF expansion (exact value = exact_log_mgf).
ConvergenceStudy convergence_study_mgf(const MgfParams& params,
                                       const std::vector<int>& ns,
                                       double tol = 1e-12, bool parallel = true);

}  // namespace tfh
