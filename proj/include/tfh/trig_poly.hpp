#pragma once

#include <complex>
#include <map>
#include <vector>

namespace tfh {

using cplx = std::complex<double>;

/// Finite two-sided Laurent series c(z) = sum_k c_k z^k, evaluated on the
/// unit circle z = e^{i theta}. Coefficients outside [k_min, k_max] are zero.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::map<int, cplx> coeffs);

  static TrigPolynomial constant(cplx c0);
  /// a*(z + 1/z), the workhorse test potential.
  static TrigPolynomial symmetric_pair(double a);

  cplx coeff(int k) const;
  void set_coeff(int k, cplx value);

  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  bool empty() const { return coeffs_.empty(); }

  /// True when c_{-k} == conj(c_k) for all k, i.e. the series is real-valued
  /// on the unit circle.
  bool real_on_circle(double tol = 1e-14) const;

  cplx eval(double theta) const;
  /// Value at a general nonzero complex point (Laurent evaluation).
  cplx eval_at(cplx z) const;

  /// Splits into (c_0, indices >= 1, indices <= -1); recombination is exact.
  struct Split;
  Split laurent_split() const;

  TrigPolynomial scaled(cplx factor) const;
  TrigPolynomial plus(const TrigPolynomial& other) const;

  const std::map<int, cplx>& coeffs() const { return coeffs_; }

  /// Recovers a coefficient table from 2^j uniform samples by discrete
  /// Fourier transform, truncating at relative tail mass `tail_tol`.
  static TrigPolynomial from_samples(const std::vector<cplx>& samples,
                                     double tail_tol = 1e-14);

 private:
  void prune();
  std::map<int, cplx> coeffs_;
  int k_min_ = 0;
  int k_max_ = 0;
};

struct TrigPolynomial::Split {
  cplx c0;
  TrigPolynomial plus;
  TrigPolynomial minus;
};

}  // namespace tfh
