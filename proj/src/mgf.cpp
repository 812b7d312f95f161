#include "tfh/mgf.hpp"

#include "tfh/highprec.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfh {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
const cplx kI(0.0, 1.0);

std::vector<Singularity> mgf_singularities(const MgfParams& p) {
  const std::size_t m = p.thetas.size();
  if (p.us.size() != m || p.alphas.size() != m + 1) {
    throw std::invalid_argument("mgf: inconsistent parameter sizes");
  }
  cplx u0(0.0, 0.0);
  for (const auto& u : p.us) u0 -= u;
  // beta_k = u_k / (2 pi i)
  std::vector<Singularity> sings;
  sings.push_back({0.0, p.alphas[0], u0 / (kTau * kI)});
  for (std::size_t k = 0; k < m; ++k) {
    sings.push_back({p.thetas[k], p.alphas[k + 1], p.us[k] / (kTau * kI)});
  }
  return sings;
}

bool real_query(const MgfParams& p) {
  if (!p.W.real_on_circle(1e-12)) return false;
  for (const auto& a : p.alphas) {
    if (std::abs(a.imag()) > 1e-14) return false;
  }
  for (const auto& u : p.us) {
    if (std::abs(u.imag()) > 1e-14) return false;
  }
  return true;
}

}  // namespace

cplx exact_log_mgf(const MgfQuery& q, double tol) {
  if (q.n < 1) throw std::invalid_argument("exact_log_mgf: need n >= 1");
  SymbolSpec num_spec =
      SymbolSpec::make(q.params.V, q.params.W, mgf_singularities(q.params), q.n);
  SymbolSpec den_spec = SymbolSpec::make(q.params.V, {}, {}, q.n);

  LogDet num = logdet_symbol(num_spec, q.n, tol);
  LogDet den = logdet_symbol(den_spec, q.n, tol);

  cplx log_ratio(num.total_log_modulus() - den.total_log_modulus(),
                 num.phase - den.phase);
  cplx prefactor(0.0, 0.0);
  for (std::size_t k = 0; k < q.params.thetas.size(); ++k) {
    prefactor += q.params.us[k] * q.params.thetas[k] * double(q.n) / kTau;
  }
  cplx log_mgf = log_ratio + prefactor;
  if (real_query(q.params)) {
    if (std::abs(log_mgf.imag()) >
        1e-9 * std::max(1.0, std::abs(log_mgf.real()))) {
      throw std::runtime_error("exact_log_mgf: real query produced a phase");
    }
    log_mgf = cplx(log_mgf.real(), 0.0);
  }
  return log_mgf;
}

cplx exact_mgf(const MgfQuery& q, double tol) {
  return std::exp(exact_log_mgf(q, tol));
}

namespace {

// log-MGF of one statistic as a function of the exponent u.
cplx stat_log_mgf(const StatQuery& q, double u, const LogDet& den,
                  double tol) {
  MgfQuery m;
  m.n = q.n;
  m.params.V = q.V;
  switch (q.kind) {
    case StatKind::smooth:
      m.params.W = q.W.scaled(u);
      m.params.alphas = {cplx(0.0, 0.0)};
      break;
    case StatKind::log_abs:
      if (q.theta == 0.0) {
        m.params.alphas = {cplx(u, 0.0)};
      } else {
        m.params.alphas = {cplx(0.0, 0.0), cplx(u, 0.0)};
        m.params.us = {cplx(0.0, 0.0)};
        m.params.thetas = {q.theta};
      }
      break;
    case StatKind::counting:
      m.params.alphas = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
      m.params.us = {cplx(u, 0.0)};
      m.params.thetas = {q.theta};
      break;
  }
  // reuse the shared denominator: build only the numerator here
  SymbolSpec num_spec =
      SymbolSpec::make(m.params.V, m.params.W, mgf_singularities(m.params), q.n);
  LogDet num = logdet_symbol(num_spec, q.n, tol);
  cplx log_ratio(num.total_log_modulus() - den.total_log_modulus(),
                 num.phase - den.phase);
  cplx prefactor(0.0, 0.0);
  for (std::size_t k = 0; k < m.params.thetas.size(); ++k) {
    prefactor += m.params.us[k] * m.params.thetas[k] * double(q.n) / kTau;
  }
  return log_ratio + prefactor;
}

struct StencilCoeffs {
  std::array<double, 9> c;
  int order;  // truncation order in h
};

const std::array<StencilCoeffs, 4> kStencils = {{
    {{1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0, 4.0 / 5, -1.0 / 5,
      4.0 / 105, -1.0 / 280},
     8},
    {{-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5,
      -1.0 / 5, 8.0 / 315, -1.0 / 560},
     8},
    {{-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0.0, -61.0 / 30,
      169.0 / 120, -3.0 / 10, 7.0 / 240},
     6},
    {{7.0 / 240, -2.0 / 5, 169.0 / 60, -122.0 / 15, 91.0 / 8, -122.0 / 15,
      169.0 / 60, -2.0 / 5, 7.0 / 240},
     6},
}};

double stencil_derivative(const std::array<double, 9>& c,
                          const std::array<double, 9>& g, double h, int j) {
  double acc = 0.0;
  for (int i = 0; i < 9; ++i) acc += c[i] * g[i];
  return acc / std::pow(h, j);
}

}  // namespace

std::vector<double> exact_cumulants(const StatQuery& q, int orders, double h,
                                    bool richardson) {
  if (orders < 1 || orders > 4) {
    throw std::invalid_argument("exact_cumulants: orders must be 1..4");
  }
  SymbolSpec den_spec = SymbolSpec::make(q.V, {}, {}, q.n);
  LogDet den = logdet_symbol(den_spec, q.n, 1e-13);

  // steep symbols run the MPFR pipeline, which parallelizes over panels;
  // parallelize the stencil itself only on the double path
  bool outer_parallel = planned_precision_bits(den_spec) == 0;
  auto eval_grid = [&](double step) {
    std::array<double, 9> g{};
#pragma omp parallel for schedule(dynamic) if (outer_parallel)
    for (int i = 0; i < 9; ++i) {
      double u = (i - 4) * step;
      g[static_cast<std::size_t>(i)] =
          (i == 4) ? 0.0 : stat_log_mgf(q, u, den, 1e-13).real();
    }
    return g;
  };

  std::array<double, 9> g_h = eval_grid(h);
  std::array<double, 9> g_h2{};
  if (richardson) g_h2 = eval_grid(0.5 * h);

  std::vector<double> kappa(orders);
  for (int j = 1; j <= orders; ++j) {
    const auto& st = kStencils[static_cast<std::size_t>(j - 1)];
    double d_h = stencil_derivative(st.c, g_h, h, j);
    if (!richardson) {
      kappa[j - 1] = d_h;
      continue;
    }
    double d_h2 = stencil_derivative(st.c, g_h2, 0.5 * h, j);
    double w = std::pow(2.0, st.order);
    kappa[j - 1] = (w * d_h2 - d_h) / (w - 1.0);
  }
  return kappa;
}

namespace {

double fit_top_half_slope(std::vector<ConvergenceRow>& rows, int& fit_points) {
  std::vector<double> xs, ys;
  std::size_t start = rows.size() / 2;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].floored = rows[i].abs_diff < ConvergenceStudy::kFloor;
    if (i >= start && !rows[i].floored) {
      xs.push_back(std::log(double(rows[i].n)));
      ys.push_back(std::log(rows[i].abs_diff));
    }
  }
  fit_points = static_cast<int>(xs.size());
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, denom = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    denom += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / denom;
}

}  // namespace

ConvergenceStudy convergence_study(const SymbolSpec& base,
                                   const std::vector<int>& ns, Target target,
                                   double tol, bool parallel) {
  AsymptoticExpansion exp;
  switch (target) {
    case Target::thm11:
      exp = thm11_constants(base);
      break;
    case Target::thm41:
      if (!base.V.empty()) {
        throw std::domain_error("convergence_study: thm41 target needs V = 0");
      }
      exp = thm41_constants(base.W, base.singularities);
      break;
    case Target::thm17:
      throw std::invalid_argument("convergence_study: use convergence_study_mgf");
  }
  ConvergenceStudy study;
  study.rows.resize(ns.size());
  {
    SymbolSpec probe = base;
    probe.n = ns.back();
    if (planned_precision_bits(probe) > 0) parallel = false;
  }
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < ns.size(); ++i) {
    int n = ns[i];
    SymbolSpec spec = base;
    spec.n = n;
    LogDet ld = logdet_symbol(spec, n, tol);
    ConvergenceRow row;
    row.n = n;
    row.exact = ld.log();
    row.predicted = exp.predict_log(double(n));
    row.abs_diff = std::abs(row.exact - row.predicted);
    study.rows[i] = row;
  }
  study.slope = fit_top_half_slope(study.rows, study.fit_points);
  return study;
}

ConvergenceStudy convergence_study_mgf(const MgfParams& params,
                                       const std::vector<int>& ns, double tol,
                                       bool parallel) {
  Thm17Expansion exp = thm17_constants(params);
  ConvergenceStudy study;
  study.rows.resize(ns.size());
  {
    SymbolSpec probe = SymbolSpec::make(params.V, {}, {}, ns.back());
    if (planned_precision_bits(probe) > 0) parallel = false;
  }
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < ns.size(); ++i) {
    MgfQuery q{params, ns[i]};
    ConvergenceRow row;
    row.n = ns[i];
    row.exact = exact_log_mgf(q, tol);
    row.predicted = exp.expansion.predict_log(double(ns[i]));
    row.abs_diff = std::abs(row.exact - row.predicted);
    study.rows[i] = row;
  }
  study.slope = fit_top_half_slope(study.rows, study.fit_points);
  return study;
}

}  // namespace tfh
