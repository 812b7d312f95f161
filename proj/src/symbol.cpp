#include "tfh/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "panels.hpp"
#include "tfh/quadrature.hpp"

namespace tfh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;
constexpr int kPanelOrder = 32;

// log|e^{i theta} - e^{i theta_s}| = log(2 |sin((theta - theta_s)/2)|)
double log_chord(double theta, double theta_s) {
  return std::log(2.0 * std::abs(std::sin(0.5 * (theta - theta_s))));
}

}  // namespace

cplx Singularity::t() const { return std::polar(1.0, theta); }

SymbolSpec SymbolSpec::make(TrigPolynomial V, TrigPolynomial W,
                            std::vector<Singularity> sings, int n) {
  SymbolSpec spec;
  spec.V = std::move(V);
  spec.W = std::move(W);
  spec.n = n;
  std::sort(sings.begin(), sings.end(),
            [](const Singularity& x, const Singularity& y) {
              return x.theta < y.theta;
            });
  if (sings.empty() || sings.front().theta != 0.0) {
    sings.insert(sings.begin(), Singularity{});
  }
  spec.singularities = std::move(sings);
  spec.validate();
  return spec;
}

void SymbolSpec::validate() const {
  if (singularities.empty() || singularities.front().theta != 0.0) {
    throw std::invalid_argument("SymbolSpec: theta_0 = 0 must be present");
  }
  for (std::size_t k = 0; k < singularities.size(); ++k) {
    const auto& s = singularities[k];
    if (s.theta < 0.0 || s.theta >= kTau) {
      throw std::invalid_argument("SymbolSpec: theta outside [0, 2pi)");
    }
    if (k > 0 && s.theta <= singularities[k - 1].theta) {
      throw std::invalid_argument("SymbolSpec: thetas must be strictly increasing");
    }
    if (s.alpha.real() <= -1.0) {
      throw std::invalid_argument("SymbolSpec: need Re alpha > -1");
    }
    if (std::abs(s.beta.real()) >= 0.5) {
      throw std::invalid_argument("SymbolSpec: need Re beta in (-1/2, 1/2)");
    }
  }
  if (!V.real_on_circle(1e-12)) {
    throw std::invalid_argument("SymbolSpec: V must be real on the circle");
  }
}

bool SymbolSpec::hermitian_fast_path(double tol) const {
  if (!W.real_on_circle(tol)) return false;
  for (const auto& s : singularities) {
    if (std::abs(s.alpha.imag()) > tol) return false;
    if (std::abs(s.beta.real()) > tol) return false;
  }
  return true;
}

cplx omega_alpha(const Singularity& s, double theta) {
  if (s.alpha == cplx(0.0)) return cplx(1.0, 0.0);
  double d = std::abs(std::sin(0.5 * (theta - s.theta)));
  if (d == 0.0) {
    if (s.alpha.real() > 0.0) return cplx(0.0, 0.0);
    throw std::domain_error("omega_alpha: pole at the singular point");
  }
  return std::exp(s.alpha * std::log(2.0 * d));
}

cplx omega_beta(const Singularity& s, double theta) {
  double branch = (theta < s.theta) ? kPi : -kPi;
  return std::exp(cplx(0.0, 1.0) * s.beta * (theta - s.theta + branch));
}

LogVal log_symbol_eval(const SymbolSpec& spec, double theta) {
  LogVal lv;
  cplx v = spec.V.eval(theta);
  cplx w = spec.W.eval(theta);
  lv.log_mod = -double(spec.n) * v.real() + w.real();
  lv.phase = -double(spec.n) * v.imag() + w.imag();
  for (const auto& s : spec.singularities) {
    if (s.alpha != cplx(0.0)) {
      double d = std::abs(std::sin(0.5 * (theta - s.theta)));
      if (d == 0.0) {
        if (s.alpha.real() < 0.0) {
          throw std::domain_error("log_symbol_eval: pole at a singular point");
        }
        lv.log_mod = -std::numeric_limits<double>::infinity();
        continue;
      }
      double L = std::log(2.0 * d);
      lv.log_mod += s.alpha.real() * L;
      lv.phase += s.alpha.imag() * L;
    }
    if (s.beta != cplx(0.0)) {
      double branch = (theta < s.theta) ? kPi : -kPi;
      double arg = theta - s.theta + branch;
      lv.log_mod -= s.beta.imag() * arg;
      lv.phase += s.beta.real() * arg;
    }
  }
  return lv;
}

cplx symbol_eval(const SymbolSpec& spec, double theta) {
  LogVal lv = log_symbol_eval(spec, theta);
  return std::exp(lv.log_mod) * std::polar(1.0, lv.phase);
}

bool CoeffTable::hermitian(double tol) const {
  for (int k = 0; k <= K; ++k) {
    if (std::abs(at(-k) - std::conj(at(k))) > tol) return false;
  }
  return true;
}

namespace detail {

std::vector<Panel> build_panels(const SymbolSpec& spec, double max_width,
                                int extra_grading, double focus_theta,
                                double focus_width) {
  const auto& sings = spec.singularities;
  const int m1 = static_cast<int>(sings.size());
  std::vector<Panel> panels;
  for (int seg = 0; seg < m1; ++seg) {
    double a = sings[seg].theta;
    double b = (seg + 1 < m1) ? sings[seg + 1].theta : kTau;
    int right_sing = (seg + 1 < m1) ? seg + 1 : 0;
    if (b - a < 1e-14) continue;

    std::vector<double> cuts;
    split_uniform(a, b, max_width, focus_theta, focus_width, cuts);

    bool grade_left = sings[seg].alpha != cplx(0.0);
    bool grade_right = sings[right_sing].alpha != cplx(0.0);

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double lo = cuts[i], hi = cuts[i + 1];
      bool first = (i == 0), last = (i + 2 == cuts.size());
      if (first && grade_left) {
        int J = grading_depth(sings[seg].alpha) + extra_grading;
        double h = hi - lo;
        // innermost Gauss-Jacobi panel plus a geometric ladder above it
        panels.push_back({lo, lo + h * std::ldexp(1.0, -J), seg, true});
        for (int j = J - 1; j >= 0; --j) {
          panels.push_back({lo + h * std::ldexp(1.0, -j - 1),
                            lo + h * std::ldexp(1.0, -j), -1, true});
        }
        if (last && grade_right) {
          // single chunk between two root singularities: split at the middle
          // and grade the right half separately
          double mid = 0.5 * (lo + hi);
          panels.back().b = mid;
          int Jr = grading_depth(sings[right_sing].alpha) + extra_grading;
          double hr = hi - mid;
          for (int j = 0; j < Jr; ++j) {
            panels.push_back({hi - hr * std::ldexp(1.0, -j),
                              hi - hr * std::ldexp(1.0, -j - 1), -1, false});
          }
          panels.push_back({hi - hr * std::ldexp(1.0, -Jr), hi, right_sing,
                            false});
        }
        continue;
      }
      if (last && grade_right) {
        int J = grading_depth(sings[right_sing].alpha) + extra_grading;
        double h = hi - lo;
        for (int j = 0; j < J; ++j) {
          panels.push_back({hi - h * std::ldexp(1.0, -j),
                            hi - h * std::ldexp(1.0, -j - 1), -1, false});
        }
        panels.push_back({hi - h * std::ldexp(1.0, -J), hi, right_sing, false});
        continue;
      }
      panels.push_back({lo, hi, -1, true});
    }
  }
  return panels;
}

double sample_log_scale(const SymbolSpec& spec) {
  const int grid = 2048;
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    double theta = kTau * (j + 0.5) / grid;
    LogVal lv = log_symbol_eval(spec, theta);
    best = std::max(best, lv.log_mod);
  }
  return best;
}

double oscillation_estimate(const SymbolSpec& spec) {
  const int grid = 2048;
  double floor_dist = kPi / (2.0 * std::max(spec.n, 8));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = 0; j < grid; ++j) {
    double theta = kTau * (j + 0.5) / grid;
    double v = -double(spec.n) * spec.V.eval(theta).real() +
               spec.W.eval(theta).real();
    for (const auto& s : spec.singularities) {
      if (s.alpha != cplx(0.0)) {
        double d = std::max(std::abs(std::sin(0.5 * (theta - s.theta))),
                            std::sin(0.5 * floor_dist));
        v += s.alpha.real() * std::log(2.0 * d);
      }
      if (s.beta != cplx(0.0)) {
        double branch = (theta < s.theta) ? kPi : -kPi;
        v -= s.beta.imag() * (theta - s.theta + branch);
      }
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

double log_derivative_bound(const SymbolSpec& spec) {
  const int grid = 1024;
  double best = 1.0;
  for (int j = 0; j < grid; ++j) {
    double theta = kTau * (j + 0.5) / grid;
    cplx dv(0.0, 0.0), dw(0.0, 0.0);
    for (const auto& [k, c] : spec.V.coeffs()) {
      dv += cplx(0.0, double(k)) * c * std::polar(1.0, k * theta);
    }
    for (const auto& [k, c] : spec.W.coeffs()) {
      dw += cplx(0.0, double(k)) * c * std::polar(1.0, k * theta);
    }
    best = std::max(best, std::abs(double(spec.n) * std::abs(dv)) + std::abs(dw));
  }
  return best;
}

}  // namespace detail

namespace {

using detail::Panel;

// Scaled, possibly regularized symbol value. When `reg_sing >= 0` the factor
// |theta - theta_s|^{Re alpha} of that singularity is omitted (it lives in
// the Gauss-Jacobi weight); the smooth remainder (2 sin|d/2| / |d|)^{Re alpha}
// and the full imaginary-exponent part stay here.
cplx scaled_symbol_value(const SymbolSpec& spec, double theta, double s_star,
                         int reg_sing, double sing_theta) {
  LogVal lv;
  cplx v = spec.V.eval(theta);
  cplx w = spec.W.eval(theta);
  lv.log_mod = -double(spec.n) * v.real() + w.real() - s_star;
  lv.phase = -double(spec.n) * v.imag() + w.imag();
  for (std::size_t j = 0; j < spec.singularities.size(); ++j) {
    const auto& s = spec.singularities[j];
    if (s.alpha != cplx(0.0)) {
      if (static_cast<int>(j) == reg_sing) {
        double d = std::abs(theta - sing_theta);
        double chord = 2.0 * std::abs(std::sin(0.5 * d));
        double L = std::log(chord);
        lv.log_mod += s.alpha.real() * (L - std::log(d));
        lv.phase += s.alpha.imag() * L;
      } else {
        double L = log_chord(theta, s.theta);
        lv.log_mod += s.alpha.real() * L;
        lv.phase += s.alpha.imag() * L;
      }
    }
    if (s.beta != cplx(0.0)) {
      double branch = (theta < s.theta) ? kPi : -kPi;
      double arg = theta - s.theta + branch;
      lv.log_mod -= s.beta.imag() * arg;
      lv.phase += s.beta.real() * arg;
    }
  }
  return std::exp(lv.log_mod) * std::polar(1.0, lv.phase);
}

SymbolGrid grid_from_panels(const SymbolSpec& spec,
                            const std::vector<Panel>& panels, double s_star) {
  SymbolGrid grid;
  grid.s_star = s_star;
  const QuadRule& gl = gauss_legendre(kPanelOrder);
  for (const auto& p : panels) {
    double half = 0.5 * (p.b - p.a);
    if (half <= 0.0) continue;
    if (p.sing < 0) {
      for (int q = 0; q < kPanelOrder; ++q) {
        double theta = p.a + half * (gl.x[q] + 1.0);
        grid.theta.push_back(theta);
        grid.mu.push_back(half * gl.w[q] *
                          scaled_symbol_value(spec, theta, s_star, -1, 0.0));
      }
    } else {
      double expo = spec.singularities[p.sing].alpha.real();
      QuadRule gj = gauss_jacobi_left(kPanelOrder, expo);
      double sing_theta = p.sing_left ? p.a : p.b;
      // weight scale: int (theta - a)^expo g = half^{expo+1} sum w g
      double scale = std::pow(half, expo + 1.0);
      for (int q = 0; q < kPanelOrder; ++q) {
        double theta = p.sing_left ? p.a + half * (gj.x[q] + 1.0)
                                   : p.b - half * (gj.x[q] + 1.0);
        grid.theta.push_back(theta);
        grid.mu.push_back(scale * gj.w[q] *
                          scaled_symbol_value(spec, theta, s_star, p.sing,
                                              sing_theta));
      }
    }
  }
  return grid;
}

std::vector<cplx> coeffs_from_grid(const SymbolGrid& grid, int K,
                                   bool parallel) {
  const std::size_t nq = grid.theta.size();
  std::vector<cplx> out(2 * K + 1);
  // Each k is independent; identical results with or without threads.
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k <= K; ++k) {
    cplx pos(0.0, 0.0), neg(0.0, 0.0);
    for (std::size_t q = 0; q < nq; ++q) {
      cplx e = std::polar(1.0, -double(k) * grid.theta[q]);
      pos += grid.mu[q] * e;
      if (k > 0) neg += grid.mu[q] * std::conj(e);
    }
    out[static_cast<std::size_t>(K + k)] = pos / kTau;
    if (k > 0) out[static_cast<std::size_t>(K - k)] = neg / kTau;
  }
  return out;
}

CoeffTable fourier_coeffs_impl(const SymbolSpec& spec, int K, double tol,
                               bool parallel) {
  spec.validate();
  CoeffTable table;
  table.K = K;
  table.s_star = detail::sample_log_scale(spec);

  double width0 = std::min(kPi / 4.0, 16.0 / std::max(K, 8));
  std::vector<cplx> prev;
  for (int level = 0; level <= 5; ++level) {
    auto panels =
        detail::build_panels(spec, std::ldexp(width0, -level), level, -1.0, 0.0);
    auto grid = grid_from_panels(spec, panels, table.s_star);
    auto cur = coeffs_from_grid(grid, K, parallel);
    if (level >= 1) {
      double err = 0.0;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        err = std::max(err, std::abs(cur[i] - prev[i]));
      }
      if (err < tol) {
        table.c = std::move(cur);
        table.achieved_tol = err;
        return table;
      }
    }
    prev = std::move(cur);
  }
  throw std::runtime_error("fourier_coeffs: panel budget exhausted before tolerance");
}

}  // namespace

CoeffTable fourier_coeffs(const SymbolSpec& spec, int K, double tol,
                          bool parallel) {
  return fourier_coeffs_impl(spec, K, tol, parallel);
}

CoeffTable fourier_coeffs_serial(const SymbolSpec& spec, int K, double tol) {
  return fourier_coeffs_impl(spec, K, tol, false);
}

SymbolGrid symbol_grid(const SymbolSpec& spec, double max_width,
                       int extra_grading, double focus_theta,
                       double focus_width) {
  spec.validate();
  double s_star = detail::sample_log_scale(spec);
  auto panels = detail::build_panels(spec, max_width, extra_grading,
                                     focus_theta, focus_width);
  return grid_from_panels(spec, panels, s_star);
}

}  // namespace tfh
