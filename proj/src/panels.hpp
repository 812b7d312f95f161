#pragma once

// Internal panel layout shared by the double- and high-precision coefficient
// engines. Panels are split at every singular point; root-type endpoints get
// a geometric ladder with an innermost Gauss-Jacobi panel.

#include <cmath>
#include <numbers>
#include <vector>

#include "tfh/symbol.hpp"

namespace tfh::detail {

struct Panel {
  double a = 0.0;
  double b = 0.0;
  int sing = -1;        // singularity whose modulus factor lives in the weights
  bool sing_left = true;
};

// Geometric grading depth toward a root-type endpoint. Real alpha is handled
// exactly by the Jacobi weight; complex alpha leaves a log-oscillatory factor
// whose innermost-panel contribution must be pushed below tolerance by depth.
inline int grading_depth(cplx alpha) {
  if (std::abs(alpha.imag()) < 1e-13) return 3;
  return std::min(300, static_cast<int>(std::ceil(42.0 / (1.0 + alpha.real()))));
}

inline double circ_dist(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

inline void split_uniform(double a, double b, double wmax, double focus_theta,
                          double focus_width, std::vector<double>& cuts) {
  int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / wmax)));
  for (int i = 0; i <= pieces; ++i) {
    cuts.push_back(a + (b - a) * i / pieces);
  }
  if (focus_theta >= 0.0 && focus_width > 0.0 && focus_width < wmax) {
    std::vector<double> refined;
    refined.push_back(cuts.front());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double lo = cuts[i], hi = cuts[i + 1];
      double mid = 0.5 * (lo + hi);
      if (circ_dist(mid, focus_theta) < 16.0 * focus_width + (hi - lo)) {
        int sub = std::max(1, static_cast<int>(std::ceil((hi - lo) / focus_width)));
        for (int s = 1; s <= sub; ++s) refined.push_back(lo + (hi - lo) * s / sub);
      } else {
        refined.push_back(hi);
      }
    }
    cuts.swap(refined);
  }
}

std::vector<Panel> build_panels(const SymbolSpec& spec, double max_width,
                                int extra_grading, double focus_theta,
                                double focus_width);

// max over a uniform sample grid of log|f|, the symbol scaling constant
double sample_log_scale(const SymbolSpec& spec);

// log-range of the scaled symbol with singular dips clamped at the scale
// 1/n; drives the working-precision choice for the determinant path.
double oscillation_estimate(const SymbolSpec& spec);

// max over theta of |d/dtheta log f|, by sampling; the effective bandwidth
// n max|V'| + ... that panel widths must resolve alongside e^{-ik theta}.
double log_derivative_bound(const SymbolSpec& spec);

}  // namespace tfh::detail
