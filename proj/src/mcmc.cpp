#include "tfh/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace tfh {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// splitmix64; used both to derive per-chain seeds and as the chain RNG.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0, 1)
    return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }
  double normal() {
    double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTau * u2);
  }
};

double wrap(double theta) {
  theta = std::fmod(theta, kTau);
  if (theta < 0) theta += kTau;
  return theta;
}

double log_pair(double a, double b) {
  double s = std::abs(std::sin(0.5 * (a - b)));
  if (s == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(2.0 * s);
}

struct ChainResult {
  double scale = 0.0;
  double acceptance = 0.0;
};

ChainResult run_chain(const TrigPolynomial& V, int n, int steps,
                      std::uint64_t chain_seed, int kept, double* out) {
  Rng rng(chain_seed);
  std::vector<double> phi(n);
  for (int i = 0; i < n; ++i) {
    phi[i] = wrap(kTau * i / n + 0.1 * rng.normal() / n);
  }
  std::vector<double> v_of(n);
  for (int i = 0; i < n; ++i) v_of[i] = V.eval(phi[i]).real();

  int burnin = steps / 5;
  double sigma = 2.0 / n;
  long proposed = 0, accepted = 0;
  long window_prop = 0, window_acc = 0;
  long kept_prop = 0, kept_acc = 0;

  for (int sweep = 0; sweep < steps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double cand = wrap(phi[i] + sigma * rng.normal());
      double dlog = -double(n) * (V.eval(cand).real() - v_of[i]);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        dlog += 2.0 * (log_pair(cand, phi[j]) - log_pair(phi[i], phi[j]));
      }
      ++proposed;
      ++window_prop;
      bool accept = dlog >= 0.0 || rng.uniform() < std::exp(dlog);
      if (accept) {
        phi[i] = cand;
        v_of[i] = V.eval(cand).real();
        ++accepted;
        ++window_acc;
      }
      if (sweep >= burnin) {
        ++kept_prop;
        if (accept) ++kept_acc;
      }
    }
    if (sweep < burnin && window_prop >= 25l * n) {
      double rate = double(window_acc) / double(window_prop);
      if (rate < 0.3) sigma *= 0.8;
      if (rate > 0.5) sigma = std::min(sigma * 1.25, kTau / 2.0);
      window_prop = window_acc = 0;
    }
    if (sweep >= burnin) {
      int s = sweep - burnin;
      if (s < kept) {
        double* dst = out + static_cast<std::size_t>(s) * n;
        std::copy(phi.begin(), phi.end(), dst);
        std::sort(dst, dst + n);
      }
    }
  }
  ChainResult res;
  res.scale = sigma;
  res.acceptance = kept_prop > 0 ? double(kept_acc) / double(kept_prop)
                                 : double(accepted) / double(proposed);
  return res;
}

}  // namespace

SampleBatch mcmc_sample(const TrigPolynomial& V, int n, int chains, int steps,
                        std::uint64_t seed, bool parallel) {
  if (n < 2) throw std::invalid_argument("mcmc_sample: need n >= 2");
  if (!V.real_on_circle(1e-12)) {
    throw std::invalid_argument("mcmc_sample: V must be real on the circle");
  }
  SampleBatch batch;
  batch.n = n;
  batch.chains = chains;
  batch.samples = steps - steps / 5;
  batch.seed = seed;
  batch.angles.resize(static_cast<std::size_t>(chains) * batch.samples * n);

  std::vector<ChainResult> results(chains);
  // fixed splitting rule for per-chain seeds
  std::vector<std::uint64_t> chain_seeds(chains);
  {
    Rng splitter(seed);
    for (int c = 0; c < chains; ++c) chain_seeds[c] = splitter.next_u64();
  }
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int c = 0; c < chains; ++c) {
    double* out =
        batch.angles.data() + static_cast<std::size_t>(c) * batch.samples * n;
    results[c] = run_chain(V, n, steps, chain_seeds[c], batch.samples, out);
  }
  double scale = 0.0, acc = 0.0;
  for (const auto& r : results) {
    scale += r.scale;
    acc += r.acceptance;
  }
  batch.proposal_scale = scale / chains;
  batch.acceptance_rate = acc / chains;
  return batch;
}

void save_batch(const SampleBatch& batch, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_batch: cannot open " + path);
  char header[64];
  std::memset(header, 0, sizeof(header));
  std::snprintf(header, sizeof(header), "TFHSAMP1 n=%d c=%d s=%d seed=%llu",
                batch.n, batch.chains, batch.samples,
                static_cast<unsigned long long>(batch.seed));
  f.write(header, sizeof(header));
  f.write(reinterpret_cast<const char*>(batch.angles.data()),
          static_cast<std::streamsize>(batch.angles.size() * sizeof(double)));
}

SampleBatch load_batch(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_batch: cannot open " + path);
  char header[65];
  std::memset(header, 0, sizeof(header));
  f.read(header, 64);
  SampleBatch batch;
  unsigned long long seed = 0;
  if (std::sscanf(header, "TFHSAMP1 n=%d c=%d s=%d seed=%llu", &batch.n,
                  &batch.chains, &batch.samples, &seed) != 4) {
    throw std::runtime_error("load_batch: bad header");
  }
  batch.seed = seed;
  batch.angles.resize(static_cast<std::size_t>(batch.chains) * batch.samples *
                      batch.n);
  f.read(reinterpret_cast<char*>(batch.angles.data()),
         static_cast<std::streamsize>(batch.angles.size() * sizeof(double)));
  if (!f) throw std::runtime_error("load_batch: truncated sample file");
  return batch;
}

EmpiricalReport empirical_statistics(const SampleBatch& batch,
                                     const EquilibriumDensity& psi,
                                     double theta_ref) {
  if (batch.chains < 1 || batch.samples < 1) {
    throw std::invalid_argument("empirical_statistics: empty batch");
  }
  const int n = batch.n;
  const double logn = std::log(double(n));
  EmpiricalReport rep;
  rep.theta_ref = theta_ref;
  rep.epsilons = {0.05, 0.1, 0.2};

  std::vector<double> eta = classical_locations(psi, n);
  std::vector<double> mu_eta(n);  // n * cdf at each classical location = k
  int k_ref = static_cast<int>(std::floor(n * cdf_mu(psi, theta_ref) + 0.5));
  k_ref = std::clamp(k_ref, 1, n);
  double psi_eta = psi.eval(eta[k_ref - 1]);

  std::vector<double> chain_count_mean(batch.chains, 0.0);
  std::vector<double> chain_count_var(batch.chains, 0.0);
  std::vector<double> fluct;
  fluct.reserve(static_cast<std::size_t>(batch.chains) * batch.samples);
  std::vector<long> count_rigid(rep.epsilons.size(), 0);
  std::vector<long> order_rigid(rep.epsilons.size(), 0);
  double sup_acc = 0.0;

  for (int c = 0; c < batch.chains; ++c) {
    double cm = 0.0, cm2 = 0.0;
    for (int s = 0; s < batch.samples; ++s) {
      const double* xi = batch.sample(c, s);
      // N_n(theta_ref): sorted angles
      int count = static_cast<int>(
          std::upper_bound(xi, xi + n, theta_ref) - xi);
      cm += count;
      cm2 += double(count) * count;
      // sup over theta of |N_n(theta) - n cdf(theta)| for the step function
      double sup = 0.0;
      for (int k = 1; k <= n; ++k) {
        double mu = n * cdf_mu(psi, xi[k - 1]);
        sup = std::max(sup, std::max(std::abs(k - mu), std::abs(k - 1 - mu)));
      }
      sup_acc += sup;
      double max_ordered = 0.0;
      for (int k = 1; k <= n; ++k) {
        max_ordered = std::max(
            max_ordered, psi.eval(eta[k - 1]) * std::abs(xi[k - 1] - eta[k - 1]));
      }
      for (std::size_t e = 0; e < rep.epsilons.size(); ++e) {
        double thr_c = (1.0 + rep.epsilons[e]) * logn / std::numbers::pi;
        double thr_o = (1.0 + rep.epsilons[e]) * logn /
                       (std::numbers::pi * n);
        if (sup <= thr_c) ++count_rigid[e];
        if (max_ordered <= thr_o) ++order_rigid[e];
      }
      double z = double(n) * psi_eta * (xi[k_ref - 1] - eta[k_ref - 1]) *
                 std::numbers::pi / std::sqrt(logn);
      fluct.push_back(z);
    }
    cm /= batch.samples;
    cm2 /= batch.samples;
    chain_count_mean[c] = cm;
    chain_count_var[c] = cm2 - cm * cm;
  }

  const double total = double(batch.chains) * batch.samples;
  auto mean_se = [&](const std::vector<double>& xs, double& mean, double& se) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= std::max<std::size_t>(xs.size() - 1, 1);
    se = std::sqrt(var / xs.size());
  };
  mean_se(chain_count_mean, rep.count_mean, rep.count_mean_se);
  mean_se(chain_count_var, rep.count_var, rep.count_var_se);

  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (double z : fluct) m1 += z;
  m1 /= fluct.size();
  for (double z : fluct) {
    double d = z - m1;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= fluct.size();
  m3 /= fluct.size();
  m4 /= fluct.size();
  rep.fluct_mean = m1;
  rep.fluct_var = m2;
  rep.fluct_skew = m3 / std::pow(m2, 1.5);
  rep.fluct_kurt = m4 / (m2 * m2);

  rep.rigidity_counting.resize(rep.epsilons.size());
  rep.rigidity_ordered.resize(rep.epsilons.size());
  for (std::size_t e = 0; e < rep.epsilons.size(); ++e) {
    rep.rigidity_counting[e] = count_rigid[e] / total;
    rep.rigidity_ordered[e] = order_rigid[e] / total;
  }
  rep.sup_mean = sup_acc / total;
  return rep;
}

}  // namespace tfh
