#include "tfh/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfh/asymptotics.hpp"
#include "tfh/equilibrium.hpp"
#include "tfh/mgf.hpp"
#include "tfh/opuc.hpp"
#include "tfh/quadrature.hpp"
#include "tfh/special.hpp"
#include "tfh/symbol.hpp"
#include "tfh/toeplitz.hpp"

namespace tfh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;
const cplx kI(0.0, 1.0);

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * ((next_u64() >> 11) * 0x1.0p-53);
  }
};

void push(std::vector<CheckResult>& out, const std::string& name,
          double residual, double tol) {
  out.push_back({name, residual, tol, residual <= tol});
}

// Random real-on-circle trig polynomial with a regular equilibrium density.
TrigPolynomial random_regular_potential(Rng& rng, int degree) {
  std::map<int, cplx> c;
  for (int k = 1; k <= degree; ++k) {
    // keep sum k |V_k| < 1/2 so that psi > 0
    double cap = 0.2 / (degree * k);
    cplx vk(rng.uniform(-cap, cap), rng.uniform(-cap, cap));
    c[k] = vk;
    c[-k] = std::conj(vk);
  }
  return TrigPolynomial(std::move(c));
}

TrigPolynomial random_complex_poly(Rng& rng, int degree, double scale) {
  std::map<int, cplx> c;
  c[0] = cplx(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
  for (int k = 1; k <= degree; ++k) {
    c[k] = cplx(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) /
           double(k);
    c[-k] = cplx(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) /
            double(k);
  }
  return TrigPolynomial(std::move(c));
}

// Principal-value integral (1/(i pi)) pv-int_T q(w)/(w - z) dw for a Laurent
// polynomial q and z on the circle, by subtracting the singular part:
//   pv-int h(theta)/(e^{i theta} - e^{i phi}) dtheta
//     = int (h(theta) - h(phi))/(...) dtheta - pi e^{-i phi} h(phi),
// with h(theta) = i e^{i theta} q(e^{i theta}). The regularized integrand is
// entire, so fixed panels of order 32 are exact to machine precision.
cplx pv_oracle(const TrigPolynomial& q, cplx z) {
  double phi = std::arg(z);
  auto h = [&](double theta) {
    return kI * std::polar(1.0, theta) * q.eval(theta);
  };
  cplx hphi = h(phi);
  const QuadRule& gl = gauss_legendre(32);
  cplx acc(0.0, 0.0);
  const int panels = 24;
  for (int p = 0; p < panels; ++p) {
    double a = phi + kTau * p / panels;
    double b = phi + kTau * (p + 1) / panels;
    double half = 0.5 * (b - a);
    for (int i = 0; i < 32; ++i) {
      double theta = a + half * (gl.x[i] + 1.0);
      cplx denom = std::polar(1.0, theta) - z;
      cplx g;
      if (std::abs(denom) < 1e-9) {
        // removable point: limit h'(phi)/(i e^{i phi})
        double dt = 1e-5;
        g = (h(theta + dt) - h(theta - dt)) / (2.0 * dt) /
            (kI * std::polar(1.0, theta));
      } else {
        g = (h(theta) - hphi) / denom;
      }
      acc += half * gl.w[i] * g;
    }
  }
  acc += -kPi * std::exp(cplx(0.0, -phi)) * hphi;
  return acc / (kI * kPi);
}

std::vector<int> decomposition_sizes() { return {0, 1, 2}; }

}  // namespace

std::vector<CheckResult> verify_identities(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed);

  // Lemma-type equilibrium identities at random potentials and points
  {
    double worst1 = 0.0, worst2 = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
      TrigPolynomial V = random_regular_potential(rng, 2 + rep);
      EquilibriumDensity psi = equilibrium_density(V);
      auto vs = V.laurent_split();
      for (int i = 0; i < 25; ++i) {
        double phi = rng.uniform(0.0, kTau);
        cplx z = std::polar(1.0, phi);
        double lhs = log_kernel_integral(psi, z);
        double rhs = 0.5 * (V.eval(phi).real() - vs.c0.real());
        worst1 = std::max(worst1, std::abs(lhs - rhs));
        double cdf = cdf_mu(psi, phi);
        double rhs2 = phi / kTau -
                      (vs.plus.eval_at(z).imag() -
                       vs.plus.eval_at(cplx(1.0, 0.0)).imag()) /
                          kPi;
        worst2 = std::max(worst2, std::abs(cdf - rhs2));
      }
    }
    push(out, "equilibrium log-kernel identity (100 random z)", worst1, 1e-10);
    push(out, "equilibrium cdf identity (100 random z)", worst2, 1e-10);
  }

  // Principal-value Cauchy identities against the quadrature oracle
  {
    double worst_d = 0.0, worst_f = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
      TrigPolynomial p = random_regular_potential(rng, 8);
      TrigPolynomial dp;  // q(w) = p'(w)
      for (const auto& [k, c] : p.coeffs()) {
        if (k != 0) dp.set_coeff(k - 1, double(k) * c);
      }
      for (int i = 0; i < 8; ++i) {
        cplx z = std::polar(1.0, rng.uniform(0.0, kTau));
        cplx closed_d = pv_cauchy(p, z, PvMode::derivative);
        worst_d = std::max(worst_d, std::abs(closed_d - pv_oracle(dp, z)));
        cplx closed_f = pv_cauchy(p, z, PvMode::function);
        worst_f = std::max(worst_f, std::abs(closed_f - pv_oracle(p, z)));
      }
    }
    push(out, "pv Cauchy identity, derivative mode (deg <= 8)", worst_d, 1e-10);
    push(out, "pv Cauchy identity, function mode (deg <= 8)", worst_f, 1e-10);
  }

  // Determinant scaling law logdet(c f, n) = n log c + logdet(f, n)
  {
    double worst = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      CoeffTable tab;
      tab.K = 64;
      tab.c.resize(2 * tab.K + 1);
      tab.s_star = 0.0;
      for (int k = -tab.K; k <= tab.K; ++k) {
        cplx v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        tab.c[static_cast<std::size_t>(k + tab.K)] =
            (k == 0) ? cplx(4.0 + rng.uniform(), 0.0)
                     : v / (1.0 + std::abs(k) * std::abs(k));
      }
      double c = 0.5 + 3.0 * rng.uniform();
      CoeffTable scaled = tab;
      for (auto& v : scaled.c) v *= c;
      for (int n : {8, 33, 64}) {
        LogDet a = logdet_general(tab, n);
        LogDet b = logdet_general(scaled, n);
        double diff = std::abs(b.log_modulus - n * std::log(c) - a.log_modulus);
        worst = std::max(worst, diff / std::max(1.0, std::abs(a.log_modulus)));
      }
    }
    push(out, "determinant scaling law (n <= 64)", worst, 1e-10);
  }

  // thm11 = thm41 + prop44 componentwise on random regular specs
  {
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      TrigPolynomial V = random_regular_potential(rng, 1 + rep % 3);
      TrigPolynomial W = random_complex_poly(rng, 2, 0.4);
      std::vector<Singularity> sings;
      int m = decomposition_sizes()[rep % 3];
      double theta = 0.0;
      for (int j = 0; j < m; ++j) {
        theta += rng.uniform(0.5, 2.5);
        if (theta >= kTau - 0.1) break;
        Singularity s;
        s.theta = theta;
        s.alpha = cplx(rng.uniform(-0.6, 1.2), rng.uniform(-0.5, 0.5));
        s.beta = cplx(rng.uniform(-0.4, 0.4), rng.uniform(-0.5, 0.5));
        sings.push_back(s);
      }
      if (rep % 4 == 0 && !sings.empty()) {
        // exercise a nontrivial theta_0 = 0 entry as well
        Singularity s0;
        s0.alpha = cplx(rng.uniform(0.0, 0.8), 0.0);
        s0.beta = cplx(rng.uniform(-0.3, 0.3), 0.0);
        sings.insert(sings.begin(), s0);
      }
      SymbolSpec spec = SymbolSpec::make(V, W, sings, 16);
      auto full = thm11_constants(spec);
      auto v0 = thm41_constants(spec.W, spec.singularities);
      auto pot = prop44_constants(spec);
      double d = std::abs(full.constants[0] - pot.constants[0]);
      d = std::max(d, std::abs(full.constants[1] -
                               (v0.constants[0] + pot.constants[1])));
      d = std::max(d, std::abs(full.constants[2] - v0.constants[1]));
      d = std::max(d, std::abs(full.constants[3] -
                               (v0.constants[2] + pot.constants[2])));
      worst = std::max(worst, d);
    }
    push(out, "thm11 = thm41 + prop44 decomposition (50 specs)", worst, 1e-12);
  }
  return out;
}

std::vector<CheckResult> verify_section2() {
  std::vector<CheckResult> out;

  auto identity_spec = SymbolSpec::make({}, {}, {}, 0);
  auto smooth_spec = SymbolSpec::make(TrigPolynomial::symmetric_pair(0.15),
                                      TrigPolynomial::symmetric_pair(0.1), {}, 4);
  std::vector<Singularity> jump{{kPi / 2, cplx(0.0, 0.0), cplx(0.0, 0.1)}};
  auto jump_spec = SymbolSpec::make({}, {}, jump, 0);

  struct Case {
    const char* name;
    SymbolSpec spec;
    double tol;
  };
  std::vector<Case> cases = {{"identity symbol", identity_spec, 1e-5},
                             {"positive smooth symbol", smooth_spec, 1e-5},
                             {"jump beta=0.1i symbol", jump_spec, 1e-5}};

  for (auto& c : cases) {
    double worst = 0.0;
    CoeffTable tab = fourier_coeffs(c.spec, 12, 1e-13);
    OpucFamily fam = opuc_szego(tab, 9);
    for (int n : {2, 5, 8}) {
      for (cplx z : {cplx(2.0, 0.3), cplx(0.35, -0.2)}) {
        auto check = verify_cd_identity(fam, c.spec, n, z);
        worst = std::max(worst, check.residual);
      }
    }
    push(out, std::string("Christoffel-Darboux identity, ") + c.name, worst,
         c.tol);
  }

  // product formula D_n = prod kappa_j^{-2} at n <= 8
  {
    double worst = 0.0;
    for (auto& c : cases) {
      CoeffTable tab = fourier_coeffs(c.spec, 12, 1e-13);
      OpucFamily fam = opuc_szego(tab, 8);
      LogDet ld = logdet_general(tab, 8);
      cplx dn = std::exp(cplx(ld.total_log_modulus(), ld.phase));
      cplx prod(1.0, 0.0);
      for (int j = 0; j < 8; ++j) prod *= 1.0 / fam.kappa_sq[j];
      worst = std::max(worst, std::abs(prod - dn) / std::abs(dn));
    }
    push(out, "product formula D_n = prod kappa^-2 (n = 8)", worst, 1e-9);
  }

  // differential identity in the deformation s -> sV
  {
    double worst = 0.0;
    TrigPolynomial V = TrigPolynomial::symmetric_pair(0.2);
    for (double s : {0.25, 0.5, 0.75}) {
      for (int n : {4, 8}) {
        auto check = verify_diff_identity(V, {}, {}, n, s);
        worst = std::max(worst,
                         check.residual / std::max(1.0, std::abs(check.lhs)));
      }
    }
    push(out, "differential identity, smooth deformation", worst, 1e-4);

    double worst_s = 0.0;
    std::vector<Singularity> root{{kTau / 3, cplx(0.5, 0.0), cplx(0.0, 0.0)}};
    for (double s : {0.25, 0.5, 0.75}) {
      auto check = verify_diff_identity(V, {}, root, 4, s);
      worst_s = std::max(worst_s,
                         check.residual / std::max(1.0, std::abs(check.lhs)));
    }
    push(out, "differential identity, alpha = 0.5 singularity", worst_s, 1e-4);
  }
  return out;
}

std::vector<CheckResult> verify_special() {
  std::vector<CheckResult> out;

  // G(k) = prod_{j <= k-2} j!
  {
    double worst = 0.0;
    for (int k = 1; k <= 8; ++k) {
      double expect = 0.0;
      for (int j = 1; j <= k - 2; ++j) expect += std::lgamma(j + 1.0);
      double got = log_barnes_g(cplx(double(k), 0.0)).real();
      worst = std::max(worst, std::abs(got - expect));
    }
    push(out, "Barnes G at integers G(k)=prod j! (k <= 8)", worst, 1e-12);
  }

  // recurrence residual on the strip
  {
    double worst = 0.0;
    for (double re = 0.5; re <= 1.5 + 1e-9; re += 0.125) {
      for (double im = -5.0; im <= 5.0 + 1e-9; im += 0.25) {
        cplx z(re, im);
        cplx res = log_barnes_g(z + 1.0) - log_gamma(z) - log_barnes_g(z);
        worst = std::max(worst, std::abs(res));
      }
    }
    push(out, "recurrence log G(z+1) = log Gamma(z) + log G(z) on strip", worst,
         1e-12);
  }

  // derivative constants and the variance-constant map
  {
    double r1 = std::abs(log_g_deriv_at_1(2) + (1.0 + euler_gamma()));
    push(out, "(log G)''(1) = -(1+gamma_E)", r1, 1e-10);
    double variance_constant = (-1.0 + 0.5) * log_g_deriv_at_1(2);
    double r2 = std::abs(variance_constant - 0.5 * (1.0 + euler_gamma()));
    push(out, "cumulant map (-1+2^{1-j}) at j=2 gives (1+gamma_E)/2", r2, 1e-12);
    double r3 = std::abs(log_g_deriv_at_1(3) - kPi * kPi / 3.0);
    push(out, "(log G)'''(1) = pi^2/3", r3, 1e-10);
  }

  // finite differences of log G at 1 against the closed forms
  {
    double worst = 0.0;
    double h = 1e-2;
    for (int j = 1; j <= 4; ++j) {
      double acc = 0.0;
      // central differences on a 9-point stencil
      static const double c1[9] = {1.0 / 280,  -4.0 / 105, 1.0 / 5,
                                   -4.0 / 5,   0.0,        4.0 / 5,
                                   -1.0 / 5,   4.0 / 105,  -1.0 / 280};
      static const double c2[9] = {-1.0 / 560, 8.0 / 315, -1.0 / 5,
                                   8.0 / 5,    -205.0 / 72, 8.0 / 5,
                                   -1.0 / 5,   8.0 / 315,  -1.0 / 560};
      static const double c3[9] = {-7.0 / 240, 3.0 / 10,   -169.0 / 120,
                                   61.0 / 30,  0.0,        -61.0 / 30,
                                   169.0 / 120, -3.0 / 10,  7.0 / 240};
      static const double c4[9] = {7.0 / 240,  -2.0 / 5,   169.0 / 60,
                                   -122.0 / 15, 91.0 / 8,  -122.0 / 15,
                                   169.0 / 60, -2.0 / 5,   7.0 / 240};
      const double* cs = j == 1 ? c1 : j == 2 ? c2 : j == 3 ? c3 : c4;
      for (int i = 0; i < 9; ++i) {
        acc += cs[i] * log_barnes_g(cplx(1.0 + (i - 4) * h, 0.0)).real();
      }
      acc /= std::pow(h, j);
      worst = std::max(worst, std::abs(acc - log_g_deriv_at_1(j)));
    }
    push(out, "finite-difference derivatives of log G at 1 (j <= 4)", worst,
         1e-6);
  }
  return out;
}

std::vector<CheckResult> verify_quadrature() {
  std::vector<CheckResult> out;

  // pure jump at theta_0 = 0: f_k = sin(pi beta)/(pi (beta - k))
  {
    for (cplx beta : {cplx(0.1, 0.0), cplx(0.2, 0.1), cplx(-0.3, 0.0)}) {
      // the jump parameters sit on the structural theta_0 entry
      SymbolSpec spec = SymbolSpec::make({}, {}, {}, 0);
      spec.singularities[0].beta = beta;
      CoeffTable tab = fourier_coeffs(spec, 64, 1e-12);
      double unscale = std::exp(tab.s_star);
      double worst = 0.0;
      for (int k = -64; k <= 64; ++k) {
        cplx expect = std::sin(kPi * beta) / (kPi * (beta - double(k)));
        worst = std::max(worst, std::abs(tab.at(k) * unscale - expect));
      }
      char name[96];
      std::snprintf(name, sizeof(name),
                    "jump coefficients, beta = %.2g%+.2gi (|k| <= 64)",
                    beta.real(), beta.imag());
      push(out, name, worst, 1e-10);
    }
  }

  // pure root |z-1|^alpha = (2 - 2cos)^{alpha/2}:
  // f_k = (-1)^k Gamma(1+alpha)/(Gamma(1+a/2+k) Gamma(1+a/2-k))
  {
    for (double alpha : {0.5, 1.0, 1.7}) {
      SymbolSpec spec = SymbolSpec::make({}, {}, {}, 0);
      spec.singularities[0].alpha = cplx(alpha, 0.0);
      CoeffTable tab = fourier_coeffs(spec, 64, 1e-12);
      double unscale = std::exp(tab.s_star);
      double worst = 0.0;
      for (int k = -64; k <= 64; ++k) {
        int ka = std::abs(k);
        double parity = (ka % 2 == 0) ? 1.0 : -1.0;
        double expect;
        if (1.0 + 0.5 * alpha - ka > 0.0) {
          expect = parity * std::exp(std::lgamma(1.0 + alpha) -
                                     std::lgamma(1.0 + 0.5 * alpha + ka) -
                                     std::lgamma(1.0 + 0.5 * alpha - ka));
        } else {
          // reflection: Gamma(1+a/2-k) = pi / (sin(pi(1+a/2-k)) Gamma(k-a/2));
          // (-1)^k sin(pi(1+a/2-k)) = -sin(pi a/2) for every integer k
          expect = -std::sin(kPi * 0.5 * alpha) / kPi *
                   std::exp(std::lgamma(1.0 + alpha) +
                            std::lgamma(ka - 0.5 * alpha) -
                            std::lgamma(1.0 + 0.5 * alpha + ka));
        }
        worst = std::max(worst, std::abs(tab.at(k) * unscale - expect));
      }
      char name[96];
      std::snprintf(name, sizeof(name),
                    "root coefficients, alpha = %.2g (|k| <= 64)", alpha);
      push(out, name, worst, 1e-9);
    }
  }
  return out;
}

std::vector<CheckResult> verify_suite(const std::string& name,
                                      std::uint64_t seed) {
  if (name == "identities") return verify_identities(seed);
  if (name == "section2") return verify_section2();
  if (name == "special") return verify_special();
  if (name == "quadrature") return verify_quadrature();
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const char* s : {"identities", "section2", "special", "quadrature"}) {
      auto part = verify_suite(s, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace tfh
