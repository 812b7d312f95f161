#include "tfh/trig_poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfh {

TrigPolynomial::TrigPolynomial(std::map<int, cplx> coeffs)
    : coeffs_(std::move(coeffs)) {
  prune();
}

void TrigPolynomial::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == cplx(0.0, 0.0)) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  if (coeffs_.empty()) {
    k_min_ = k_max_ = 0;
  } else {
    k_min_ = std::min(0, coeffs_.begin()->first);
    k_max_ = std::max(0, coeffs_.rbegin()->first);
  }
}

TrigPolynomial TrigPolynomial::constant(cplx c0) {
  return TrigPolynomial({{0, c0}});
}

TrigPolynomial TrigPolynomial::symmetric_pair(double a) {
  return TrigPolynomial({{1, cplx(a, 0.0)}, {-1, cplx(a, 0.0)}});
}

cplx TrigPolynomial::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx(0.0, 0.0) : it->second;
}

void TrigPolynomial::set_coeff(int k, cplx value) {
  if (value == cplx(0.0, 0.0)) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = value;
  }
  prune();
}

bool TrigPolynomial::real_on_circle(double tol) const {
  for (const auto& [k, c] : coeffs_) {
    if (std::abs(coeff(-k) - std::conj(c)) > tol) return false;
  }
  return true;
}

cplx TrigPolynomial::eval(double theta) const {
  cplx sum(0.0, 0.0);
  for (const auto& [k, c] : coeffs_) {
    sum += c * std::polar(1.0, k * theta);
  }
  return sum;
}

cplx TrigPolynomial::eval_at(cplx z) const {
  cplx sum(0.0, 0.0);
  for (const auto& [k, c] : coeffs_) {
    sum += c * std::pow(z, k);
  }
  return sum;
}

TrigPolynomial::Split TrigPolynomial::laurent_split() const {
  Split out;
  out.c0 = coeff(0);
  std::map<int, cplx> plus, minus;
  for (const auto& [k, c] : coeffs_) {
    if (k >= 1) plus[k] = c;
    if (k <= -1) minus[k] = c;
  }
  out.plus = TrigPolynomial(std::move(plus));
  out.minus = TrigPolynomial(std::move(minus));
  return out;
}

TrigPolynomial TrigPolynomial::scaled(cplx factor) const {
  std::map<int, cplx> out;
  for (const auto& [k, c] : coeffs_) out[k] = factor * c;
  return TrigPolynomial(std::move(out));
}

TrigPolynomial TrigPolynomial::plus(const TrigPolynomial& other) const {
  std::map<int, cplx> out = coeffs_;
  for (const auto& [k, c] : other.coeffs_) out[k] += c;
  return TrigPolynomial(std::move(out));
}

TrigPolynomial TrigPolynomial::from_samples(const std::vector<cplx>& samples,
                                            double tail_tol) {
  const int n = static_cast<int>(samples.size());
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("from_samples: need a power-of-two grid");
  }
  const double tau = 2.0 * std::numbers::pi;
  std::vector<cplx> dft(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      acc += samples[j] * std::polar(1.0, -tau * k * j / n);
    }
    dft[k] = acc / static_cast<double>(n);
    total += std::abs(dft[k]);
  }
  // Frequencies above n/2 fold to negative indices.
  std::map<int, cplx> coeffs;
  for (int k = 0; k < n; ++k) {
    int idx = (k <= n / 2) ? k : k - n;
    if (std::abs(dft[k]) > tail_tol * std::max(total, 1.0)) {
      coeffs[idx] = dft[k];
    }
  }
  return TrigPolynomial(std::move(coeffs));
}

}  // namespace tfh
