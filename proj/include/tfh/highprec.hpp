#pragma once

#include "tfh/toeplitz.hpp"

namespace tfh {

/// Log-range of the scaled symbol over the circle (singular dips clamped at
/// scale 1/n). The Toeplitz condition number grows like e^{osc}, which fixes
/// the working precision needed by the determinant path.
double symbol_oscillation(const SymbolSpec& spec);

/// Exact log D_n for an arbitrary symbol spec. Well-conditioned symbols
/// (osc <= ~14) run the double-precision panel + recursion pipeline; steeper
/// symbols (the e^{-nV} regime) run the same algorithms in MPFR arithmetic
/// with ~1.45 osc + 256 bits, because every pivot below e^{-osc} of the
/// matrix scale is pure rounding noise in doubles.
LogDet logdet_symbol(const SymbolSpec& spec, int n, double tol = 1e-12);

/// Working precision in bits that logdet_symbol would pick (0 = double path).
int planned_precision_bits(const SymbolSpec& spec);

}  // namespace tfh
