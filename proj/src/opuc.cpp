#include "tfh/opuc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfh {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTau);
  if (theta < 0) theta += kTau;
  return theta;
}

// Dense determinant of a small complex matrix (destroys its argument).
cplx small_det(std::vector<cplx>& a, int n) {
  cplx det(1.0, 0.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[static_cast<std::size_t>(col) * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(a[static_cast<std::size_t>(r) * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return cplx(0.0, 0.0);
    if (piv != col) {
      for (int c2 = 0; c2 < n; ++c2) {
        std::swap(a[static_cast<std::size_t>(piv) * n + c2],
                  a[static_cast<std::size_t>(col) * n + c2]);
      }
      det = -det;
    }
    cplx d = a[static_cast<std::size_t>(col) * n + col];
    det *= d;
    for (int r = col + 1; r < n; ++r) {
      cplx m = a[static_cast<std::size_t>(r) * n + col] / d;
      for (int c2 = col + 1; c2 < n; ++c2) {
        a[static_cast<std::size_t>(r) * n + c2] -=
            m * a[static_cast<std::size_t>(col) * n + c2];
      }
    }
  }
  return det;
}

cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

// Leading principal determinant D_k of the scaled coefficient table.
cplx principal_det(const CoeffTable& coeffs, int k) {
  if (k == 0) return cplx(1.0, 0.0);
  std::vector<cplx> m(static_cast<std::size_t>(k) * k);
  for (int r = 0; r < k; ++r) {
    for (int a = 0; a < k; ++a) {
      m[static_cast<std::size_t>(r) * k + a] = coeffs.at(r - a);
    }
  }
  return small_det(m, k);
}

}  // namespace

cplx OpucFamily::eval_monic(int k, cplx z) const { return horner(monic[k], z); }

cplx OpucFamily::eval_monic_hat(int k, cplx z) const {
  return horner(monic_hat[k], z);
}

cplx OpucFamily::cd_sum(int n, cplx z) const {
  cplx acc(0.0, 0.0);
  cplx zi = 1.0 / z;
  for (int k = 0; k < n; ++k) {
    acc += kappa_sq[k] * eval_monic_hat(k, zi) * eval_monic(k, z);
  }
  return acc;
}

OpucFamily opuc_from_moments(const CoeffTable& coeffs, int k_max) {
  if (k_max > 8) {
    throw std::invalid_argument("opuc_from_moments: oracle limited to k_max <= 8");
  }
  OpucFamily fam;
  fam.k_max = k_max;
  std::vector<cplx> dets(k_max + 2);
  for (int k = 0; k <= k_max + 1; ++k) dets[k] = principal_det(coeffs, k);
  for (int k = 0; k <= k_max; ++k) {
    if (std::abs(dets[k]) == 0.0 || std::abs(dets[k + 1]) == 0.0) {
      throw std::runtime_error("opuc_from_moments: vanishing sub-determinant");
    }
  }
  double unscale = std::exp(-coeffs.s_star);
  for (int k = 0; k <= k_max; ++k) {
    std::vector<cplx> p(k + 1), phat(k + 1);
    if (k == 0) {
      p[0] = phat[0] = cplx(1.0, 0.0);
    } else {
      // cofactor expansion along the power row/column of the bordered
      // moment determinants
      for (int j = 0; j <= k; ++j) {
        std::vector<cplx> minor(static_cast<std::size_t>(k) * k);
        for (int r = 0; r < k; ++r) {
          int cc = 0;
          for (int a = 0; a <= k; ++a) {
            if (a == j) continue;
            minor[static_cast<std::size_t>(r) * k + cc++] = coeffs.at(r - a);
          }
        }
        double sign = ((k + j) % 2 == 0) ? 1.0 : -1.0;
        p[j] = sign * small_det(minor, k) / dets[k];
      }
      for (int r = 0; r <= k; ++r) {
        std::vector<cplx> minor(static_cast<std::size_t>(k) * k);
        int rr = 0;
        for (int r2 = 0; r2 <= k; ++r2) {
          if (r2 == r) continue;
          for (int a = 0; a < k; ++a) {
            minor[static_cast<std::size_t>(rr) * k + a] = coeffs.at(r2 - a);
          }
          ++rr;
        }
        double sign = ((k + r) % 2 == 0) ? 1.0 : -1.0;
        phat[r] = sign * small_det(minor, k) / dets[k];
      }
    }
    fam.monic.push_back(std::move(p));
    fam.monic_hat.push_back(std::move(phat));
    fam.kappa_sq.push_back(unscale * dets[k] / dets[k + 1]);
  }
  return fam;
}

OpucFamily opuc_szego(const CoeffTable& coeffs, int k_max) {
  OpucFamily fam;
  fam.k_max = k_max;
  double unscale = std::exp(-coeffs.s_star);
  cplx e = coeffs.at(0);
  if (std::abs(e) == 0.0) throw std::runtime_error("opuc_szego: D_1 = 0");
  std::vector<cplx> c(1, cplx(1.0, 0.0)), chat(1, cplx(1.0, 0.0));
  fam.monic.push_back(c);
  fam.monic_hat.push_back(chat);
  fam.kappa_sq.push_back(unscale / e);
  for (int k = 0; k < k_max; ++k) {
    cplx gamma(0.0, 0.0), gamma_hat(0.0, 0.0);
    for (int b = 0; b <= k; ++b) {
      gamma += coeffs.at(-1 - b) * c[b];
      gamma_hat += coeffs.at(b + 1) * chat[b];
    }
    cplx rho = gamma / e;
    cplx rho_hat = gamma_hat / e;
    std::vector<cplx> next(k + 2), next_hat(k + 2);
    for (int b = 0; b <= k; ++b) {
      cplx up = (b >= 1) ? c[b - 1] : cplx(0.0);
      cplx up_hat = (b >= 1) ? chat[b - 1] : cplx(0.0);
      next[b] = up - rho * chat[k - b];
      next_hat[b] = up_hat - rho_hat * c[k - b];
    }
    next[k + 1] = c[k];
    next_hat[k + 1] = chat[k];
    c.swap(next);
    chat.swap(next_hat);
    e *= 1.0 - rho * rho_hat;
    if (std::abs(e) == 0.0) {
      throw std::runtime_error("opuc_szego: recursion breakdown (some D_k = 0)");
    }
    fam.monic.push_back(c);
    fam.monic_hat.push_back(chat);
    fam.kappa_sq.push_back(unscale / e);
  }
  return fam;
}

std::array<cplx, 4> assemble_Y(const OpucFamily& family, const SymbolSpec& spec,
                               int n, cplx z, double tol) {
  if (std::abs(std::abs(z) - 1.0) < 1e-3) {
    throw std::runtime_error("assemble_Y: z too close to the unit circle");
  }
  if (family.k_max < n) {
    throw std::invalid_argument("assemble_Y: family does not reach degree n");
  }
  std::array<cplx, 4> Y;
  Y[0] = family.eval_monic(n, z);
  cplx ksq = family.kappa_sq[n - 1];
  Y[2] = -ksq * std::pow(z, n - 1) * family.eval_monic_hat(n - 1, 1.0 / z);

  double dist = std::abs(std::abs(z) - 1.0);
  double focus = wrap_angle(std::arg(z));
  cplx y12_prev, y22_prev;
  for (int level = 0;; ++level) {
    if (level > 6) {
      throw std::runtime_error("assemble_Y: Cauchy quadrature did not settle");
    }
    double width = std::ldexp(std::numbers::pi / 8.0, -level);
    double fwidth = std::max(dist / 4.0, 1e-4) * std::ldexp(1.0, -level);
    SymbolGrid grid = symbol_grid(spec, width, level, focus, fwidth);
    cplx y12(0.0, 0.0), y22(0.0, 0.0);
    for (std::size_t q = 0; q < grid.theta.size(); ++q) {
      cplx s = std::polar(1.0, grid.theta[q]);
      cplx denom = s - z;
      y12 += grid.mu[q] * family.eval_monic(n, s) *
             std::polar(1.0, (1.0 - n) * grid.theta[q]) / denom;
      y22 += grid.mu[q] * family.eval_monic_hat(n - 1, std::conj(s)) / denom;
    }
    double scale = std::exp(grid.s_star) / kTau;
    y12 *= scale;
    y22 *= -ksq * scale;
    if (level >= 1) {
      double err = std::abs(y12 - y12_prev) + std::abs(y22 - y22_prev);
      if (err < tol * std::max(1.0, std::abs(y12) + std::abs(y22))) {
        Y[1] = y12;
        Y[3] = y22;
        return Y;
      }
    }
    y12_prev = y12;
    y22_prev = y22;
  }
}

IdentityCheck verify_cd_identity(const OpucFamily& family,
                                 const SymbolSpec& spec, int n, cplx z,
                                 double fd_step) {
  double h = fd_step * std::abs(z);
  auto Y0 = assemble_Y(family, spec, n, z);
  auto Yp = assemble_Y(family, spec, n, z + h);
  auto Ym = assemble_Y(family, spec, n, z - h);
  cplx d11 = (Yp[0] - Ym[0]) / (2.0 * h);
  cplx d21 = (Yp[2] - Ym[2]) / (2.0 * h);
  cplx det = Y0[0] * Y0[3] - Y0[1] * Y0[2];
  cplx lhs = (Y0[0] * d21 - Y0[2] * d11) / det * std::pow(z, -n + 1);
  cplx rhs = family.cd_sum(n, z);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

IdentityCheck verify_diff_identity(const TrigPolynomial& V,
                                   const TrigPolynomial& W,
                                   const std::vector<Singularity>& sings,
                                   int n, double s, double fd_step) {
  auto logdet_at = [&](double x) {
    SymbolSpec sp = SymbolSpec::make(V.scaled(x), W, sings, n);
    CoeffTable table = fourier_coeffs(sp, std::max(n, 2), 1e-13);
    LogDet ld = logdet_ladder(table, n).logdet;
    return cplx(ld.total_log_modulus(), ld.phase);
  };
  cplx lhs = (logdet_at(s + fd_step) - logdet_at(s - fd_step)) / (2.0 * fd_step);

  SymbolSpec sp = SymbolSpec::make(V.scaled(s), W, sings, n);
  CoeffTable table = fourier_coeffs(sp, std::max(n, 2), 1e-13);
  OpucFamily fam = opuc_szego(table, n);
  cplx rhs(0.0, 0.0);
  cplx prev;
  for (int level = 1;; ++level) {
    if (level > 6) {
      throw std::runtime_error("verify_diff_identity: quadrature did not settle");
    }
    SymbolGrid grid = symbol_grid(sp, std::ldexp(std::numbers::pi / 8.0, -level),
                                  level);
    cplx acc(0.0, 0.0);
    for (std::size_t q = 0; q < grid.theta.size(); ++q) {
      cplx zq = std::polar(1.0, grid.theta[q]);
      cplx cd(0.0, 0.0);
      for (int k = 0; k < n; ++k) {
        cd += fam.kappa_sq[k] * fam.eval_monic_hat(k, std::conj(zq)) *
              fam.eval_monic(k, zq);
      }
      acc += grid.mu[q] * cd * V.eval(grid.theta[q]);
    }
    acc *= -double(n) * std::exp(grid.s_star) / kTau;
    if (level >= 2 && std::abs(acc - prev) < 1e-9 * std::max(1.0, std::abs(acc))) {
      rhs = acc;
      break;
    }
    prev = acc;
  }
  return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace tfh
