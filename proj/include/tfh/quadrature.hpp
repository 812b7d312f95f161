#pragma once

#include <vector>

namespace tfh {

struct QuadRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

/// Gauss-Legendre rule of order p (cached).
const QuadRule& gauss_legendre(int p);

/// Gauss-Jacobi rule of order p for the weight (1+x)^beta on [-1, 1],
/// beta > -1. Newton iteration on the Jacobi recurrence.
QuadRule gauss_jacobi_left(int p, double beta);

}  // namespace tfh
