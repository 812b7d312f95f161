#include "tfh/toeplitz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfh {

namespace {

// Compensated accumulation; the log-modulus can be of order n^2 with
// cancellation between the potential scale and the pivot products.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void require_range(const CoeffTable& coeffs, int n) {
  if (n < 1) throw std::invalid_argument("toeplitz: need n >= 1");
  if (coeffs.K < n - 1) {
    throw std::invalid_argument("toeplitz: coefficient table too small for n");
  }
}

}  // namespace

std::vector<cplx> build_toeplitz(const CoeffTable& coeffs, int n) {
  require_range(coeffs, n);
  std::vector<cplx> a(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      a[static_cast<std::size_t>(j) * n + k] = coeffs.at(j - k);
    }
  }
  return a;
}

LogDet logdet_general(const CoeffTable& coeffs, int n) {
  require_range(coeffs, n);
  std::vector<cplx> a = build_toeplitz(coeffs, n);
  double scale = 0.0;
  for (const auto& v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw std::runtime_error("logdet_general: zero matrix");

  KahanSum log_mod;
  double phase = 0.0;
  int swaps = 0;
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
    if (best < 1e-300 * scale) {
      throw std::runtime_error(
          "logdet_general: pivot at working-precision zero (singular matrix)");
    }
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a[static_cast<std::size_t>(piv) * n + c],
                  a[static_cast<std::size_t>(col) * n + c]);
      }
      ++swaps;
    }
    cplx d = a[static_cast<std::size_t>(col) * n + col];
    log_mod.add(std::log(std::abs(d)));
    phase += std::arg(d);
    for (int r = col + 1; r < n; ++r) {
      cplx m = a[static_cast<std::size_t>(r) * n + col] / d;
      if (m == cplx(0.0)) continue;
      for (int c = col + 1; c < n; ++c) {
        a[static_cast<std::size_t>(r) * n + c] -=
            m * a[static_cast<std::size_t>(col) * n + c];
      }
    }
  }
  LogDet out;
  out.log_modulus = log_mod.sum;
  out.phase = phase + (swaps % 2 ? std::numbers::pi : 0.0);
  out.scale_correction = coeffs.s_star * n;
  return out;
}

LevinsonResult logdet_levinson(const CoeffTable& coeffs, int n) {
  require_range(coeffs, n);
  const double herm_tol = 1e-9 * std::max(1.0, std::abs(coeffs.at(0)));
  for (int k = 0; k < n; ++k) {
    if (std::abs(coeffs.at(-k) - std::conj(coeffs.at(k))) > herm_tol) {
      throw std::runtime_error("logdet_levinson: table is not Hermitian");
    }
  }
  LevinsonResult out;
  double e = coeffs.at(0).real();
  if (e <= 0.0) {
    throw std::runtime_error("logdet_levinson: nonpositive leading moment");
  }
  KahanSum log_mod;
  log_mod.add(std::log(e));
  std::vector<cplx> c(1, cplx(1.0, 0.0));  // monic predictor, degree k
  for (int k = 0; k + 1 < n; ++k) {
    cplx gamma(0.0, 0.0);
    for (int b = 0; b <= k; ++b) gamma += coeffs.at(-1 - b) * c[b];
    cplx rho = gamma / e;
    if (std::abs(rho) >= 1.0) {
      throw std::runtime_error(
          "logdet_levinson: reflection coefficient >= 1 (matrix not HPD)");
    }
    out.reflections.push_back(rho);
    // c_{k+1}(z) = z c_k(z) - rho * conj-reversed(c_k)(z); the reversed
    // polynomial has degree k, so the leading coefficient stays 1.
    std::vector<cplx> next(k + 2);
    for (int b = 0; b <= k; ++b) {
      next[b] = (b >= 1 ? c[b - 1] : cplx(0.0)) - rho * std::conj(c[k - b]);
    }
    next[k + 1] = c[k];
    c.swap(next);
    e *= 1.0 - std::norm(rho);
    if (e <= 0.0) {
      throw std::runtime_error("logdet_levinson: nonpositive error variance");
    }
    log_mod.add(std::log(e));
  }
  out.logdet.log_modulus = log_mod.sum;
  out.logdet.phase = 0.0;
  out.logdet.scale_correction = coeffs.s_star * n;
  return out;
}

LadderResult logdet_ladder(const CoeffTable& coeffs, int n) {
  require_range(coeffs, n);
  LadderResult out;
  cplx e = coeffs.at(0);
  double scale = 0.0;
  for (int k = -(n - 1); k <= n - 1; ++k) scale = std::max(scale, std::abs(coeffs.at(k)));
  if (std::abs(e) < 1e-250 * scale) {
    throw std::runtime_error("logdet_ladder: vanishing leading minor");
  }
  out.ratios.push_back(e);
  std::vector<cplx> c(1, cplx(1.0, 0.0));
  std::vector<cplx> chat(1, cplx(1.0, 0.0));
  for (int k = 0; k + 1 < n; ++k) {
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
    if (std::abs(e) < 1e-250 * scale) {
      throw std::runtime_error("logdet_ladder: vanishing minor (breakdown)");
    }
    out.ratios.push_back(e);
  }
  KahanSum log_mod;
  double phase = 0.0;
  for (const auto& r : out.ratios) {
    log_mod.add(std::log(std::abs(r)));
    phase += std::arg(r);
  }
  out.logdet.log_modulus = log_mod.sum;
  out.logdet.phase = phase;
  out.logdet.scale_correction = coeffs.s_star * n;
  return out;
}

LogDet logdet_auto(const CoeffTable& coeffs, int n) {
  bool herm = true;
  for (int k = 0; k <= std::min(coeffs.K, n - 1); ++k) {
    if (std::abs(coeffs.at(-k) - std::conj(coeffs.at(k))) >
        1e-11 * std::max(1.0, std::abs(coeffs.at(0)))) {
      herm = false;
      break;
    }
  }
  if (herm) {
    try {
      return logdet_levinson(coeffs, n).logdet;
    } catch (const std::runtime_error&) {
      // fall through to the general ladder (e.g. Hermitian but indefinite)
    }
  }
  return logdet_ladder(coeffs, n).logdet;
}

}  // namespace tfh
