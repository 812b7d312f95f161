// Compares the OpenMP kernels against the serial reference implementations:
// Fourier coefficient extraction and the MCMC sampler.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "tfh/mcmc.hpp"
#include "tfh/symbol.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, seconds(t0, t1));
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif
  std::printf("%-34s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]",
              "speedup");

  {
    std::vector<tfh::Singularity> sings{
        {2.0943951023931953, tfh::cplx(0.6, 0.0), tfh::cplx(0.2, 0.0)}};
    tfh::SymbolSpec spec =
        tfh::SymbolSpec::make(tfh::TrigPolynomial::symmetric_pair(0.3),
                              tfh::TrigPolynomial::symmetric_pair(0.1), sings,
                              512);
    volatile double sink = 0.0;
    double ts = time_best_of(3, [&] {
      auto t = tfh::fourier_coeffs_serial(spec, 512, 1e-12);
      sink = sink + t.at(0).real();
    });
    double tp = time_best_of(3, [&] {
      auto t = tfh::fourier_coeffs(spec, 512, 1e-12, true);
      sink = sink + t.at(0).real();
    });
    std::printf("%-34s %12.4f %12.4f %8.2fx\n", "fourier_coeffs (K=512, FH)",
                ts, tp, ts / tp);
    // identical panel layout and reduction order: results must match exactly
    auto a = tfh::fourier_coeffs_serial(spec, 512, 1e-12);
    auto b = tfh::fourier_coeffs(spec, 512, 1e-12, true);
    double dmax = 0.0;
    for (int k = -512; k <= 512; ++k) dmax = std::max(dmax, std::abs(a.at(k) - b.at(k)));
    std::printf("%-34s max |serial - parallel| = %.3e\n", "  determinism", dmax);
  }

  {
    tfh::TrigPolynomial V = tfh::TrigPolynomial::symmetric_pair(0.25);
    volatile double sink = 0.0;
    double ts = time_best_of(2, [&] {
      auto b = tfh::mcmc_sample(V, 64, 16, 250, 7, false);
      sink = sink + b.acceptance_rate;
    });
    double tp = time_best_of(2, [&] {
      auto b = tfh::mcmc_sample(V, 64, 16, 250, 7, true);
      sink = sink + b.acceptance_rate;
    });
    std::printf("%-34s %12.4f %12.4f %8.2fx\n",
                "mcmc_sample (n=64, 16 chains)", ts, tp, ts / tp);
    auto a = tfh::mcmc_sample(V, 64, 4, 100, 7, false);
    auto b = tfh::mcmc_sample(V, 64, 4, 100, 7, true);
    double dmax = 0.0;
    for (std::size_t i = 0; i < a.angles.size(); ++i) {
      dmax = std::max(dmax, std::abs(a.angles[i] - b.angles[i]));
    }
    std::printf("%-34s max |serial - parallel| = %.3e\n", "  determinism", dmax);
  }
  return 0;
}
