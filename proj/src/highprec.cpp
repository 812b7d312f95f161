#include "tfh/highprec.hpp"

#include <mpfr.h>

#include <cmath>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <stdexcept>
#include <vector>

#include "panels.hpp"
#include "tfh/quadrature.hpp"

namespace tfh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr mpfr_rnd_t R = MPFR_RNDN;

// RAII mpfr_t with explicit precision everywhere.
struct MpReal {
  mpfr_t v;
  explicit MpReal(int bits) { mpfr_init2(v, bits); }
  MpReal(int bits, double d) {
    mpfr_init2(v, bits);
    mpfr_set_d(v, d, R);
  }
  MpReal(const MpReal& o) {
    mpfr_init2(v, mpfr_get_prec(o.v));
    mpfr_set(v, o.v, R);
  }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v, mpfr_get_prec(o.v));
    mpfr_swap(v, o.v);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) mpfr_set(v, o.v, R);
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    if (this != &o) mpfr_swap(v, o.v);
    return *this;
  }
  ~MpReal() { mpfr_clear(v); }
  double to_double() const { return mpfr_get_d(v, R); }
};

struct MpCpx {
  MpReal re, im;
  explicit MpCpx(int bits) : re(bits), im(bits) {}
  MpCpx(int bits, double r, double i) : re(bits, r), im(bits, i) {}
  void set_zero() {
    mpfr_set_zero(re.v, 0);
    mpfr_set_zero(im.v, 0);
  }
  cplx to_cplx() const { return {re.to_double(), im.to_double()}; }
};

// out = a * b (out must not alias a or b); t is scratch
void cmul(MpCpx& out, const MpCpx& a, const MpCpx& b, MpReal& t) {
  mpfr_mul(out.re.v, a.re.v, b.re.v, R);
  mpfr_mul(t.v, a.im.v, b.im.v, R);
  mpfr_sub(out.re.v, out.re.v, t.v, R);
  mpfr_mul(out.im.v, a.re.v, b.im.v, R);
  mpfr_mul(t.v, a.im.v, b.re.v, R);
  mpfr_add(out.im.v, out.im.v, t.v, R);
}

// acc += a * b
void cmul_acc(MpCpx& acc, const MpCpx& a, const MpCpx& b, MpReal& t) {
  mpfr_fma(acc.re.v, a.re.v, b.re.v, acc.re.v, R);
  mpfr_mul(t.v, a.im.v, b.im.v, R);
  mpfr_sub(acc.re.v, acc.re.v, t.v, R);
  mpfr_fma(acc.im.v, a.re.v, b.im.v, acc.im.v, R);
  mpfr_fma(acc.im.v, a.im.v, b.re.v, acc.im.v, R);
}

// acc += r * b for real r
void rmul_acc(MpCpx& acc, const MpReal& r, const MpCpx& b) {
  mpfr_fma(acc.re.v, r.v, b.re.v, acc.re.v, R);
  mpfr_fma(acc.im.v, r.v, b.im.v, acc.im.v, R);
}

// out = a / b
void cdiv(MpCpx& out, const MpCpx& a, const MpCpx& b, MpReal& t1, MpReal& t2) {
  mpfr_mul(t1.v, b.re.v, b.re.v, R);
  mpfr_fma(t1.v, b.im.v, b.im.v, t1.v, R);  // |b|^2
  mpfr_mul(out.re.v, a.re.v, b.re.v, R);
  mpfr_fma(out.re.v, a.im.v, b.im.v, out.re.v, R);
  mpfr_div(out.re.v, out.re.v, t1.v, R);
  mpfr_mul(out.im.v, a.im.v, b.re.v, R);
  mpfr_mul(t2.v, a.re.v, b.im.v, R);
  mpfr_sub(out.im.v, out.im.v, t2.v, R);
  mpfr_div(out.im.v, out.im.v, t1.v, R);
}

// ---------------------------------------------------------------------------
// Gauss rules in MPFR, refined by Newton from the double-precision nodes.

struct MpRule {
  std::vector<MpReal> x, w;
};

void legendre_eval(int p, const MpReal& x, MpReal& P, MpReal& dP, int bits) {
  MpReal pm1(bits, 1.0), pc(bits), t(bits), u(bits);
  mpfr_set(pc.v, x.v, R);
  for (int k = 2; k <= p; ++k) {
    // k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}
    mpfr_mul(t.v, x.v, pc.v, R);
    mpfr_mul_si(t.v, t.v, 2 * k - 1, R);
    mpfr_mul_si(u.v, pm1.v, k - 1, R);
    mpfr_sub(t.v, t.v, u.v, R);
    mpfr_div_si(t.v, t.v, k, R);
    mpfr_swap(pm1.v, pc.v);
    mpfr_swap(pc.v, t.v);
  }
  mpfr_set(P.v, pc.v, R);
  // P' = p (x P_p - P_{p-1}) / (x^2 - 1)
  mpfr_mul(dP.v, x.v, pc.v, R);
  mpfr_sub(dP.v, dP.v, pm1.v, R);
  mpfr_mul_si(dP.v, dP.v, p, R);
  mpfr_mul(t.v, x.v, x.v, R);
  mpfr_sub_ui(t.v, t.v, 1, R);
  mpfr_div(dP.v, dP.v, t.v, R);
}

// Recurrence constants of the (0, b) Jacobi family at full precision; the
// double-rounded constants would cap the rule accuracy near 1e-14.
struct JacobiRecur {
  std::vector<MpReal> c2, c3, c4;  // P_k = (c2 + c3 x) P_{k-1} - c4 P_{k-2}
  MpReal d1, d2, d3;               // dP = ((d1 + d2 x) P + d3 P_{p-1})/(1-x^2)
  MpReal p1a, p1b;                 // P_1 = p1a + p1b x

  // `p` is the order whose derivative the Newton iteration needs; the
  // recurrence tables reach p+1 for the weight formula.
  JacobiRecur(int p, double b, int bits)
      : d1(bits), d2(bits), d3(bits), p1a(bits), p1b(bits) {
    MpReal bb(bits, b), t(bits), a1(bits), num(bits);
    // P_1 = -b/2 + (b/2 + 1) x
    mpfr_div_si(p1a.v, bb.v, -2, R);
    mpfr_div_si(p1b.v, bb.v, 2, R);
    mpfr_add_ui(p1b.v, p1b.v, 1, R);
    c2.reserve(p + 2);
    c3.reserve(p + 2);
    c4.reserve(p + 2);
    for (int k = 0; k <= p + 1; ++k) {
      c2.emplace_back(bits);
      c3.emplace_back(bits);
      c4.emplace_back(bits);
      if (k < 2) continue;
      // a1 = 2k (k+b)(2k+b-2)
      mpfr_add_si(t.v, bb.v, k, R);
      mpfr_mul_si(a1.v, t.v, 2 * k, R);
      mpfr_add_si(t.v, bb.v, 2 * k - 2, R);
      mpfr_mul(a1.v, a1.v, t.v, R);
      // c2 = (2k+b-1)(-b^2)/a1
      mpfr_add_si(t.v, bb.v, 2 * k - 1, R);
      mpfr_mul(num.v, t.v, bb.v, R);
      mpfr_mul(num.v, num.v, bb.v, R);
      mpfr_neg(num.v, num.v, R);
      mpfr_div(c2.back().v, num.v, a1.v, R);
      // c3 = (2k+b-2)(2k+b-1)(2k+b)/a1
      mpfr_add_si(num.v, bb.v, 2 * k - 2, R);
      mpfr_add_si(t.v, bb.v, 2 * k - 1, R);
      mpfr_mul(num.v, num.v, t.v, R);
      mpfr_add_si(t.v, bb.v, 2 * k, R);
      mpfr_mul(num.v, num.v, t.v, R);
      mpfr_div(c3.back().v, num.v, a1.v, R);
      // c4 = 2(k-1)(k+b-1)(2k+b)/a1
      mpfr_add_si(num.v, bb.v, k - 1, R);
      mpfr_mul_si(num.v, num.v, 2 * (k - 1), R);
      mpfr_add_si(t.v, bb.v, 2 * k, R);
      mpfr_mul(num.v, num.v, t.v, R);
      mpfr_div(c4.back().v, num.v, a1.v, R);
    }
    // derivative constants at order p: (2p+b) s = ...
    mpfr_add_si(t.v, bb.v, 2 * p, R);     // 2p+b
    mpfr_mul_si(d1.v, bb.v, -p, R);
    mpfr_div(d1.v, d1.v, t.v, R);         // -pb/(2p+b)
    mpfr_set_si(d2.v, -p, R);             // -p
    mpfr_add_si(d3.v, bb.v, p, R);
    mpfr_mul_si(d3.v, d3.v, 2 * p, R);
    mpfr_div(d3.v, d3.v, t.v, R);         // 2p(p+b)/(2p+b)
  }
};

void jacobi_eval_mp(int p, const JacobiRecur& rec, const MpReal& x, MpReal& P,
                    MpReal& Pm1, int bits) {
  MpReal pm1(bits, 1.0), pc(bits), t(bits), u(bits);
  mpfr_fma(pc.v, rec.p1b.v, x.v, rec.p1a.v, R);
  for (int k = 2; k <= p; ++k) {
    mpfr_fma(t.v, rec.c3[static_cast<std::size_t>(k)].v, x.v,
             rec.c2[static_cast<std::size_t>(k)].v, R);
    mpfr_mul(t.v, t.v, pc.v, R);
    mpfr_mul(u.v, rec.c4[static_cast<std::size_t>(k)].v, pm1.v, R);
    mpfr_sub(t.v, t.v, u.v, R);
    mpfr_swap(pm1.v, pc.v);
    mpfr_swap(pc.v, t.v);
  }
  mpfr_set(P.v, pc.v, R);
  mpfr_set(Pm1.v, pm1.v, R);
}

void jacobi_eval_deriv_mp(int p, const JacobiRecur& rec, const MpReal& x,
                          MpReal& P, MpReal& dP, int bits) {
  MpReal pm1(bits), t(bits), u(bits);
  jacobi_eval_mp(p, rec, x, P, pm1, bits);
  // dP = ((d1 + d2 x) P + d3 P_{p-1}) / (1 - x^2)
  mpfr_fma(t.v, rec.d2.v, x.v, rec.d1.v, R);
  mpfr_mul(t.v, t.v, P.v, R);
  mpfr_fma(t.v, rec.d3.v, pm1.v, t.v, R);
  mpfr_mul(u.v, x.v, x.v, R);
  mpfr_ui_sub(u.v, 1, u.v, R);
  mpfr_div(dP.v, t.v, u.v, R);
}

MpRule make_rule(int p, double jac_b, bool jacobi, int bits) {
  // double-precision nodes as Newton seeds
  QuadRule seed = jacobi ? gauss_jacobi_left(p, jac_b) : gauss_legendre(p);
  MpRule rule;
  rule.x.reserve(p);
  rule.w.reserve(p);
  MpReal P(bits), dP(bits), step(bits);
  MpReal logc(bits), t(bits);
  if (jacobi) {
    // log prefactor 2^b Gamma(p+1) Gamma(p+b+1) / (Gamma(p+b+1) Gamma(p+2))
    // for a = 0 reduces to 2^b / (p+1); full formula kept for clarity
    MpReal g1(bits), g2(bits), g3(bits), g4(bits);
    mpfr_set_d(t.v, double(p) + 1.0, R);
    mpfr_lngamma(g1.v, t.v, R);
    mpfr_set_d(t.v, double(p) + jac_b + 1.0, R);
    mpfr_lngamma(g2.v, t.v, R);
    mpfr_set_d(t.v, double(p) + jac_b + 1.0, R);
    mpfr_lngamma(g3.v, t.v, R);
    mpfr_set_d(t.v, double(p) + 2.0, R);
    mpfr_lngamma(g4.v, t.v, R);
    mpfr_set_d(logc.v, jac_b * std::log(2.0), R);
    mpfr_add(logc.v, logc.v, g1.v, R);
    mpfr_add(logc.v, logc.v, g2.v, R);
    mpfr_sub(logc.v, logc.v, g3.v, R);
    mpfr_sub(logc.v, logc.v, g4.v, R);
  }
  JacobiRecur rec(p, jac_b, bits);
  MpReal wpre(bits);
  if (jacobi) {
    // -exp(logc) (2p+b+2)/(p+b+1) in full precision
    MpReal bb(bits, jac_b), t2(bits);
    mpfr_exp(wpre.v, logc.v, R);
    mpfr_add_si(t.v, bb.v, 2 * p + 2, R);
    mpfr_mul(wpre.v, wpre.v, t.v, R);
    mpfr_add_si(t2.v, bb.v, p + 1, R);
    mpfr_div(wpre.v, wpre.v, t2.v, R);
    mpfr_neg(wpre.v, wpre.v, R);
  }
  for (int i = 0; i < p; ++i) {
    MpReal x(bits, seed.x[static_cast<std::size_t>(i)]);
    for (int it = 0; it < 64; ++it) {
      if (jacobi) {
        jacobi_eval_deriv_mp(p, rec, x, P, dP, bits);
      } else {
        legendre_eval(p, x, P, dP, bits);
      }
      mpfr_div(step.v, P.v, dP.v, R);
      mpfr_sub(x.v, x.v, step.v, R);
      if (mpfr_zero_p(step.v) ||
          mpfr_get_exp(step.v) < -(bits - 8)) {
        break;
      }
    }
    MpReal w(bits);
    if (!jacobi) {
      // w = 2 / ((1 - x^2) P'^2)
      legendre_eval(p, x, P, dP, bits);
      mpfr_mul(t.v, x.v, x.v, R);
      mpfr_ui_sub(t.v, 1, t.v, R);
      mpfr_mul(w.v, dP.v, dP.v, R);
      mpfr_mul(w.v, w.v, t.v, R);
      mpfr_ui_div(w.v, 2, w.v, R);
    } else {
      // w = -exp(logc) (2p+b+2) / ((p+b+1) P_{p+1}(x) P_p'(x))
      jacobi_eval_deriv_mp(p, rec, x, P, dP, bits);
      MpReal P1(bits), P1m(bits);
      jacobi_eval_mp(p + 1, rec, x, P1, P1m, bits);
      mpfr_mul(t.v, P1.v, dP.v, R);
      mpfr_div(w.v, wpre.v, t.v, R);
    }
    rule.x.push_back(std::move(x));
    rule.w.push_back(std::move(w));
  }
  return rule;
}

const MpRule& cached_rule(int p, double jac_b, bool jacobi, int bits) {
  struct Key {
    int p;
    std::uint64_t b_bits;
    bool jacobi;
    int bits;
    bool operator<(const Key& o) const {
      return std::tie(p, b_bits, jacobi, bits) <
             std::tie(o.p, o.b_bits, o.jacobi, o.bits);
    }
  };
  static std::map<Key, MpRule> cache;
  static std::mutex mu;
  std::uint64_t bb;
  static_assert(sizeof(bb) == sizeof(jac_b));
  std::memcpy(&bb, &jac_b, sizeof(bb));
  Key key{p, bb, jacobi, bits};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, make_rule(p, jac_b, jacobi, bits)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Scaled symbol evaluation at an MPFR node.

struct SymbolEvaluator {
  const SymbolSpec& spec;
  int bits;
  MpReal pi;
  // scratch
  MpReal t1, t2, logmod, phase, st, ct, half_d;
  MpCpx ez, pw, acc_v, acc_w, term;

  explicit SymbolEvaluator(const SymbolSpec& s, int b)
      : spec(s),
        bits(b),
        pi(b),
        t1(b),
        t2(b),
        logmod(b),
        phase(b),
        st(b),
        ct(b),
        half_d(b),
        ez(b),
        pw(b),
        acc_v(b),
        acc_w(b),
        term(b) {
    mpfr_const_pi(pi.v, R);
  }

  // sum over a coefficient table: out = sum c_k e^{ik theta}
  void eval_poly(const TrigPolynomial& poly, const MpReal& theta, MpCpx& out,
                 MpReal& t) {
    out.set_zero();
    if (poly.empty()) return;
    mpfr_sin_cos(st.v, ct.v, theta.v, R);
    // ez = e^{i theta}
    mpfr_set(ez.re.v, ct.v, R);
    mpfr_set(ez.im.v, st.v, R);
    int kmax = std::max(poly.k_max(), -poly.k_min());
    // pw walks e^{ik theta} upward; negative indices use the conjugate
    mpfr_set_ui(pw.re.v, 1, R);
    mpfr_set_zero(pw.im.v, 0);
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) {
        cmul(term, pw, ez, t);
        mpfr_swap(term.re.v, pw.re.v);
        mpfr_swap(term.im.v, pw.im.v);
      }
      cplx cp = poly.coeff(k);
      if (cp != cplx(0.0)) {
        // out += cp * pw
        mpfr_set_d(t1.v, cp.real(), R);
        rmul_acc(out, t1, pw);
        mpfr_set_d(t1.v, cp.imag(), R);
        mpfr_fms(t2.v, t1.v, pw.im.v, out.re.v, R);  // t2 = ci*pw.im - out.re
        mpfr_neg(out.re.v, t2.v, R);
        mpfr_fma(out.im.v, t1.v, pw.re.v, out.im.v, R);
      }
      cplx cm = poly.coeff(-k);
      if (k > 0 && cm != cplx(0.0)) {
        // out += cm * conj(pw)
        mpfr_set_d(t1.v, cm.real(), R);
        mpfr_fma(out.re.v, t1.v, pw.re.v, out.re.v, R);
        mpfr_mul(t2.v, t1.v, pw.im.v, R);
        mpfr_sub(out.im.v, out.im.v, t2.v, R);
        mpfr_set_d(t1.v, cm.imag(), R);
        mpfr_fma(out.re.v, t1.v, pw.im.v, out.re.v, R);
        mpfr_fma(out.im.v, t1.v, pw.re.v, out.im.v, R);
      }
    }
  }

  // value of the scaled symbol at theta; reg_sing as in the double engine
  void value(const MpReal& theta, double s_star, int reg_sing,
             const MpReal& sing_theta, MpCpx& out) {
    eval_poly(spec.V, theta, acc_v, t1);
    eval_poly(spec.W, theta, acc_w, t1);
    // logmod = -n Re V + Re W - s*, phase = -n Im V + Im W
    mpfr_mul_si(logmod.v, acc_v.re.v, -spec.n, R);
    mpfr_add(logmod.v, logmod.v, acc_w.re.v, R);
    mpfr_sub_d(logmod.v, logmod.v, s_star, R);
    mpfr_mul_si(phase.v, acc_v.im.v, -spec.n, R);
    mpfr_add(phase.v, phase.v, acc_w.im.v, R);

    for (std::size_t j = 0; j < spec.singularities.size(); ++j) {
      const auto& s = spec.singularities[j];
      if (s.alpha != cplx(0.0)) {
        // L = log(2 |sin((theta - theta_s)/2)|)
        mpfr_sub_d(t1.v, theta.v, s.theta, R);
        mpfr_div_ui(t1.v, t1.v, 2, R);
        mpfr_sin(t2.v, t1.v, R);
        mpfr_abs(t2.v, t2.v, R);
        mpfr_mul_ui(t2.v, t2.v, 2, R);
        mpfr_log(t2.v, t2.v, R);  // L
        if (static_cast<int>(j) == reg_sing) {
          // logmod += Re a (L - log|theta - theta_s|), phase += Im a L
          mpfr_sub(half_d.v, theta.v, sing_theta.v, R);
          mpfr_abs(half_d.v, half_d.v, R);
          mpfr_log(half_d.v, half_d.v, R);
          mpfr_sub(t1.v, t2.v, half_d.v, R);
          mpfr_mul_d(t1.v, t1.v, s.alpha.real(), R);
          mpfr_add(logmod.v, logmod.v, t1.v, R);
        } else {
          mpfr_mul_d(t1.v, t2.v, s.alpha.real(), R);
          mpfr_add(logmod.v, logmod.v, t1.v, R);
        }
        if (s.alpha.imag() != 0.0) {
          mpfr_mul_d(t1.v, t2.v, s.alpha.imag(), R);
          mpfr_add(phase.v, phase.v, t1.v, R);
        }
      }
      if (s.beta != cplx(0.0)) {
        // arg = theta - theta_k -+ pi by branch
        mpfr_sub_d(t1.v, theta.v, s.theta, R);
        if (mpfr_cmp_d(theta.v, s.theta) < 0) {
          mpfr_add(t1.v, t1.v, pi.v, R);
        } else {
          mpfr_sub(t1.v, t1.v, pi.v, R);
        }
        if (s.beta.imag() != 0.0) {
          mpfr_mul_d(t2.v, t1.v, s.beta.imag(), R);
          mpfr_sub(logmod.v, logmod.v, t2.v, R);
        }
        if (s.beta.real() != 0.0) {
          mpfr_mul_d(t2.v, t1.v, s.beta.real(), R);
          mpfr_add(phase.v, phase.v, t2.v, R);
        }
      }
    }
    mpfr_exp(t1.v, logmod.v, R);
    mpfr_sin_cos(st.v, ct.v, phase.v, R);
    mpfr_mul(out.re.v, t1.v, ct.v, R);
    mpfr_mul(out.im.v, t1.v, st.v, R);
  }
};

// ---------------------------------------------------------------------------
// High-precision coefficient table.

struct MpCoeffTable {
  int K = 0;
  int bits = 0;
  double s_star = 0.0;
  std::vector<MpCpx> c;  // index K + k
  const MpCpx& at(int k) const { return c[static_cast<std::size_t>(K + k)]; }
};

struct MpNode {
  MpReal theta;
  MpCpx eneg;  // e^{-i theta}
  MpCpx mu;    // weight * scaled symbol value
  MpNode(int bits) : theta(bits), eneg(bits), mu(bits) {}
};

std::vector<MpNode> panel_nodes(const SymbolSpec& spec,
                                const detail::Panel& p, int order, int bits,
                                double s_star, SymbolEvaluator& ev) {
  std::vector<MpNode> nodes;
  if (p.b - p.a <= 0.0) return nodes;
  nodes.reserve(order);
  MpReal half(bits), t(bits), st(bits), ct(bits);
  mpfr_set_d(half.v, p.b, R);
  mpfr_sub_d(half.v, half.v, p.a, R);
  mpfr_div_ui(half.v, half.v, 2, R);
  MpReal sing_theta(bits, p.sing_left ? p.a : p.b);
  bool jacobi = p.sing >= 0;
  double expo = jacobi ? spec.singularities[p.sing].alpha.real() : 0.0;
  const MpRule& rule = cached_rule(order, expo, jacobi, bits);
  MpReal wscale(bits, 1.0);
  if (jacobi) {
    // half^{expo + 1}
    mpfr_set_d(t.v, expo + 1.0, R);
    mpfr_pow(wscale.v, half.v, t.v, R);
  }
  for (int q = 0; q < order; ++q) {
    MpNode node(bits);
    // theta = a + half (x + 1)   (mirrored when the singularity is right)
    mpfr_add_ui(t.v, rule.x[static_cast<std::size_t>(q)].v, 1, R);
    mpfr_mul(t.v, t.v, half.v, R);
    if (jacobi && !p.sing_left) {
      mpfr_d_sub(node.theta.v, p.b, t.v, R);
    } else {
      mpfr_add_d(node.theta.v, t.v, p.a, R);
    }
    ev.value(node.theta, s_star, jacobi ? p.sing : -1, sing_theta, node.mu);
    if (jacobi) {
      mpfr_mul(node.mu.re.v, node.mu.re.v, wscale.v, R);
      mpfr_mul(node.mu.im.v, node.mu.im.v, wscale.v, R);
    } else {
      mpfr_mul(node.mu.re.v, node.mu.re.v, half.v, R);
      mpfr_mul(node.mu.im.v, node.mu.im.v, half.v, R);
    }
    mpfr_mul(node.mu.re.v, node.mu.re.v, rule.w[static_cast<std::size_t>(q)].v,
             R);
    mpfr_mul(node.mu.im.v, node.mu.im.v, rule.w[static_cast<std::size_t>(q)].v,
             R);
    mpfr_sin_cos(st.v, ct.v, node.theta.v, R);
    mpfr_set(node.eneg.re.v, ct.v, R);
    mpfr_neg(node.eneg.im.v, st.v, R);
    nodes.push_back(std::move(node));
  }
  return nodes;
}

// coefficients of one panel accumulated into acc (index K + k)
void accumulate_panel(const std::vector<MpNode>& nodes, int K, bool hermitian,
                      std::vector<MpCpx>& acc, int bits) {
  MpReal t(bits);
  MpCpx ph(bits), tmp(bits);
  for (const auto& node : nodes) {
    // positive frequencies: mu * e^{-ik theta}
    mpfr_set(ph.re.v, node.mu.re.v, R);
    mpfr_set(ph.im.v, node.mu.im.v, R);
    mpfr_add(acc[static_cast<std::size_t>(K)].re.v,
             acc[static_cast<std::size_t>(K)].re.v, ph.re.v, R);
    mpfr_add(acc[static_cast<std::size_t>(K)].im.v,
             acc[static_cast<std::size_t>(K)].im.v, ph.im.v, R);
    for (int k = 1; k <= K; ++k) {
      cmul(tmp, ph, node.eneg, t);
      mpfr_swap(tmp.re.v, ph.re.v);
      mpfr_swap(tmp.im.v, ph.im.v);
      auto& slot = acc[static_cast<std::size_t>(K + k)];
      mpfr_add(slot.re.v, slot.re.v, ph.re.v, R);
      mpfr_add(slot.im.v, slot.im.v, ph.im.v, R);
    }
    if (!hermitian) {
      // negative frequencies: mu * e^{+ik theta}
      mpfr_set(ph.re.v, node.mu.re.v, R);
      mpfr_set(ph.im.v, node.mu.im.v, R);
      for (int k = 1; k <= K; ++k) {
        // multiply by conj(eneg)
        mpfr_mul(tmp.re.v, ph.re.v, node.eneg.re.v, R);
        mpfr_fma(tmp.re.v, ph.im.v, node.eneg.im.v, tmp.re.v, R);
        mpfr_mul(tmp.im.v, ph.im.v, node.eneg.re.v, R);
        mpfr_mul(t.v, ph.re.v, node.eneg.im.v, R);
        mpfr_sub(tmp.im.v, tmp.im.v, t.v, R);
        mpfr_swap(tmp.re.v, ph.re.v);
        mpfr_swap(tmp.im.v, ph.im.v);
        auto& slot = acc[static_cast<std::size_t>(K - k)];
        mpfr_add(slot.re.v, slot.re.v, ph.re.v, R);
        mpfr_add(slot.im.v, slot.im.v, ph.im.v, R);
      }
    }
  }
}

std::vector<MpCpx> coeffs_pass(const SymbolSpec& spec, int K, int order,
                               int bits, double s_star, double max_width) {
  // complex alpha leaves a log-oscillatory factor at the singular endpoint;
  // the grading ladder must reach the working precision, not just doubles
  int extra_grading = 0;
  for (const auto& s : spec.singularities) {
    if (std::abs(s.alpha.imag()) > 1e-13) {
      int want = static_cast<int>(std::ceil(0.75 * bits / (1.0 + s.alpha.real())));
      extra_grading = std::max(extra_grading,
                               want - detail::grading_depth(s.alpha));
    }
  }
  auto panels = detail::build_panels(spec, max_width, extra_grading, -1.0, 0.0);
  bool herm = spec.hermitian_fast_path();
  const int P = static_cast<int>(panels.size());
  std::vector<std::vector<MpCpx>> partial(static_cast<std::size_t>(P));
#pragma omp parallel
  {
    SymbolEvaluator ev(spec, bits);
#pragma omp for schedule(dynamic)
    for (int pi = 0; pi < P; ++pi) {
      auto nodes = panel_nodes(spec, panels[static_cast<std::size_t>(pi)],
                               order, bits, s_star, ev);
      std::vector<MpCpx> acc;
      acc.reserve(2 * K + 1);
      for (int i = 0; i < 2 * K + 1; ++i) {
        acc.emplace_back(bits);
        acc.back().set_zero();
      }
      accumulate_panel(nodes, K, herm, acc, bits);
      partial[static_cast<std::size_t>(pi)] = std::move(acc);
    }
  }
  // fixed-order reduction keeps the result independent of thread count
  std::vector<MpCpx> out;
  out.reserve(2 * K + 1);
  for (int i = 0; i < 2 * K + 1; ++i) {
    out.emplace_back(bits);
    out.back().set_zero();
  }
  for (int pi = 0; pi < P; ++pi) {
    for (int i = 0; i < 2 * K + 1; ++i) {
      auto& o = out[static_cast<std::size_t>(i)];
      auto& a = partial[static_cast<std::size_t>(pi)][static_cast<std::size_t>(i)];
      mpfr_add(o.re.v, o.re.v, a.re.v, R);
      mpfr_add(o.im.v, o.im.v, a.im.v, R);
    }
  }
  MpReal tau(bits);
  mpfr_const_pi(tau.v, R);
  mpfr_mul_ui(tau.v, tau.v, 2, R);
  for (auto& o : out) {
    mpfr_div(o.re.v, o.re.v, tau.v, R);
    mpfr_div(o.im.v, o.im.v, tau.v, R);
  }
  if (herm) {
    for (int k = 1; k <= K; ++k) {
      auto& neg = out[static_cast<std::size_t>(K - k)];
      auto& pos = out[static_cast<std::size_t>(K + k)];
      mpfr_set(neg.re.v, pos.re.v, R);
      mpfr_neg(neg.im.v, pos.im.v, R);
    }
  }
  return out;
}

MpCoeffTable fourier_coeffs_mp(const SymbolSpec& spec, int K, int bits) {
  MpCoeffTable table;
  table.K = K;
  table.bits = bits;
  table.s_star = detail::sample_log_scale(spec);

  int order = std::max(32, ((bits / 4 + 63) / 32) * 32);
  double bandwidth = K + detail::log_derivative_bound(spec);
  double width = std::min(kPi / 4.0, 0.35 * order / bandwidth);

  for (int attempt = 0; attempt < 3; ++attempt) {
    auto a = coeffs_pass(spec, K, order, bits, table.s_star, width);
    auto b = coeffs_pass(spec, K, order + 64, bits, table.s_star, width);
    // compare in mp to catch truncation above the target accuracy
    MpReal diff(bits), t(bits);
    mpfr_set_zero(diff.v, 0);
    for (int i = 0; i < 2 * K + 1; ++i) {
      mpfr_sub(t.v, a[static_cast<std::size_t>(i)].re.v,
               b[static_cast<std::size_t>(i)].re.v, R);
      mpfr_abs(t.v, t.v, R);
      mpfr_max(diff.v, diff.v, t.v, R);
      mpfr_sub(t.v, a[static_cast<std::size_t>(i)].im.v,
               b[static_cast<std::size_t>(i)].im.v, R);
      mpfr_abs(t.v, t.v, R);
      mpfr_max(diff.v, diff.v, t.v, R);
    }
    bool ok = mpfr_zero_p(diff.v) || mpfr_get_exp(diff.v) < -(bits - 96);
    if (std::getenv("TFH_MP_DEBUG")) {
      std::fprintf(stderr,
                   "[mp] bits=%d order=%d width=%.4g K=%d diff_exp=%ld ok=%d\n",
                   bits, order, width, K,
                   mpfr_zero_p(diff.v) ? LONG_MIN : (long)mpfr_get_exp(diff.v),
                   (int)ok);
    }
    if (ok) {
      table.c = std::move(b);
      return table;
    }
    order += order / 2;
    width *= 0.5;
  }
  throw std::runtime_error(
      "fourier_coeffs_mp: quadrature did not reach the target precision");
}

// ---------------------------------------------------------------------------
// Recursions in MPFR.

LogDet ladder_mp(const MpCoeffTable& tab, int n, bool hermitian) {
  const int bits = tab.bits;
  MpCpx e(bits), gamma(bits), gamma_hat(bits), rho(bits), rho_hat(bits),
      tmp(bits), one(bits, 1.0, 0.0);
  MpReal t1(bits), t2(bits), logmod(bits), t3(bits);
  mpfr_set_zero(logmod.v, 0);
  double phase = 0.0;

  mpfr_set(e.re.v, tab.at(0).re.v, R);
  mpfr_set(e.im.v, tab.at(0).im.v, R);

  std::vector<MpCpx> c, chat, next, next_hat;
  c.emplace_back(bits, 1.0, 0.0);
  chat.emplace_back(bits, 1.0, 0.0);

  auto log_accumulate = [&](const MpCpx& ratio) {
    mpfr_hypot(t1.v, ratio.re.v, ratio.im.v, R);
    if (mpfr_zero_p(t1.v)) {
      throw std::runtime_error("logdet (mp): vanishing minor (breakdown)");
    }
    mpfr_log(t1.v, t1.v, R);
    mpfr_add(logmod.v, logmod.v, t1.v, R);
    mpfr_atan2(t2.v, ratio.im.v, ratio.re.v, R);
    phase += t2.to_double();
  };
  log_accumulate(e);

  for (int k = 0; k + 1 < n; ++k) {
    gamma.set_zero();
    gamma_hat.set_zero();
    for (int b = 0; b <= k; ++b) {
      cmul_acc(gamma, tab.at(-1 - b), c[static_cast<std::size_t>(b)], t1);
      if (!hermitian) {
        cmul_acc(gamma_hat, tab.at(b + 1), chat[static_cast<std::size_t>(b)],
                 t1);
      }
    }
    if (hermitian) {
      mpfr_set(gamma_hat.re.v, gamma.re.v, R);
      mpfr_neg(gamma_hat.im.v, gamma.im.v, R);
    }
    cdiv(rho, gamma, e, t1, t2);
    cdiv(rho_hat, gamma_hat, e, t1, t2);
    next.clear();
    next_hat.clear();
    for (int b = 0; b <= k + 1; ++b) {
      next.emplace_back(bits);
      next_hat.emplace_back(bits);
    }
    for (int b = 0; b <= k; ++b) {
      // next[b] = (b >= 1 ? c[b-1] : 0) - rho * chat[k-b]
      cmul(tmp, rho, chat[static_cast<std::size_t>(k - b)], t1);
      if (b >= 1) {
        mpfr_sub(next[static_cast<std::size_t>(b)].re.v,
                 c[static_cast<std::size_t>(b - 1)].re.v, tmp.re.v, R);
        mpfr_sub(next[static_cast<std::size_t>(b)].im.v,
                 c[static_cast<std::size_t>(b - 1)].im.v, tmp.im.v, R);
      } else {
        mpfr_neg(next[0].re.v, tmp.re.v, R);
        mpfr_neg(next[0].im.v, tmp.im.v, R);
      }
      cmul(tmp, rho_hat, c[static_cast<std::size_t>(k - b)], t1);
      if (b >= 1) {
        mpfr_sub(next_hat[static_cast<std::size_t>(b)].re.v,
                 chat[static_cast<std::size_t>(b - 1)].re.v, tmp.re.v, R);
        mpfr_sub(next_hat[static_cast<std::size_t>(b)].im.v,
                 chat[static_cast<std::size_t>(b - 1)].im.v, tmp.im.v, R);
      } else {
        mpfr_neg(next_hat[0].re.v, tmp.re.v, R);
        mpfr_neg(next_hat[0].im.v, tmp.im.v, R);
      }
    }
    next[static_cast<std::size_t>(k + 1)] = c[static_cast<std::size_t>(k)];
    next_hat[static_cast<std::size_t>(k + 1)] =
        chat[static_cast<std::size_t>(k)];
    c.swap(next);
    chat.swap(next_hat);
    // e *= 1 - rho rho_hat
    cmul(tmp, rho, rho_hat, t1);
    mpfr_ui_sub(tmp.re.v, 1, tmp.re.v, R);
    mpfr_neg(tmp.im.v, tmp.im.v, R);
    MpCpx enew(bits);
    cmul(enew, e, tmp, t1);
    e = std::move(enew);
    log_accumulate(e);
  }
  LogDet out;
  out.log_modulus = logmod.to_double();
  out.phase = phase;
  out.scale_correction = tab.s_star * n;
  return out;
}

int precision_bits_for(double osc) {
  return static_cast<int>(std::ceil(1.4427 * osc)) + 256;
}

}  // namespace

double symbol_oscillation(const SymbolSpec& spec) {
  return detail::oscillation_estimate(spec);
}

int planned_precision_bits(const SymbolSpec& spec) {
  double osc = detail::oscillation_estimate(spec);
  if (osc <= 14.0) return 0;
  return precision_bits_for(osc);
}

LogDet logdet_symbol(const SymbolSpec& spec, int n, double tol) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("logdet_symbol: need n >= 1");
  double osc = detail::oscillation_estimate(spec);
  if (osc <= 14.0) {
    CoeffTable t = fourier_coeffs(spec, std::max(n, 2), tol);
    return logdet_auto(t, n);
  }
  int bits = precision_bits_for(osc);
  MpCoeffTable tab = fourier_coeffs_mp(spec, std::max(n, 2), bits);
  return ladder_mp(tab, n, spec.hermitian_fast_path());
}

}  // namespace tfh
