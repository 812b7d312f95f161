// Command-line front end: parses symbol-spec files, dispatches computations,
// emits CSV (and optional SVG), and runs the bundled verification suites.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "tfh/asymptotics.hpp"
#include "tfh/mcmc.hpp"
#include "tfh/mgf.hpp"
#include "tfh/spec_file.hpp"
#include "tfh/verify.hpp"

namespace {

using tfh::cplx;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitVerify = 5;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> ns;
  if (text.find(':') != std::string::npos) {
    auto c1 = text.find(':');
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::invalid_argument("n-grid: expected a:b:step or a:b:xF");
    }
    int a = std::stoi(text.substr(0, c1));
    int b = std::stoi(text.substr(c1 + 1, c2 - c1 - 1));
    std::string step = text.substr(c2 + 1);
    if (!step.empty() && (step[0] == 'x' || step[0] == 'X')) {
      double f = std::stod(step.substr(1));
      if (f <= 1.0) throw std::invalid_argument("n-grid: factor must be > 1");
      for (double n = a; n <= b + 0.5; n *= f) ns.push_back(int(n + 0.5));
    } else {
      int s = std::stoi(step);
      if (s <= 0) throw std::invalid_argument("n-grid: step must be positive");
      for (int n = a; n <= b; n += s) ns.push_back(n);
    }
  } else {
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
  }
  if (ns.empty()) throw std::invalid_argument("n-grid: empty");
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) {
      throw std::invalid_argument("n-grid: must be strictly increasing");
    }
  }
  return ns;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / name);
  if (!f) throw std::runtime_error("cannot open output file " + name);
  return f;
}

void write_convergence_svg(const std::string& dir,
                           const tfh::ConvergenceStudy& study) {
  auto f = open_out(dir, "convergence.svg");
  const int w = 640, h = 480, margin = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : study.rows) {
    if (r.abs_diff <= 0) continue;
    double x = std::log10(double(r.n)), y = std::log10(r.abs_diff);
    pts.push_back({x, y});
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (pts.size() < 2) {
    f << "<svg xmlns='http://www.w3.org/2000/svg'/>\n";
    return;
  }
  auto X = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (w - 2 * margin);
  };
  auto Y = [&](double y) {
    return h - margin - (y - ymin) / (ymax - ymin + 1e-300) * (h - 2 * margin);
  };
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
    << h << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  f << "<polyline fill='none' stroke='steelblue' stroke-width='2' points='";
  for (auto& [x, y] : pts) f << X(x) << "," << Y(y) << " ";
  f << "'/>\n";
  for (auto& [x, y] : pts) {
    f << "<circle cx='" << X(x) << "' cy='" << Y(y)
      << "' r='3' fill='steelblue'/>\n";
  }
  f << "<text x='" << w / 2 << "' y='" << h - 15
    << "' text-anchor='middle' font-size='13'>log10 n</text>\n";
  f << "<text x='18' y='" << h / 2
    << "' font-size='13' transform='rotate(-90 18 " << h / 2
    << ")'>log10 |diff|</text>\n";
  char label[64];
  std::snprintf(label, sizeof(label), "fitted slope %.3f", study.slope);
  f << "<text x='" << w - margin << "' y='" << margin
    << "' text-anchor='end' font-size='13'>" << label << "</text>\n</svg>\n";
}

struct Options {
  std::string spec_path;
  std::string out_dir = ".";
  std::string grid_text;
  std::string target = "thm11";
  std::string stat = "counting";
  std::string suite = "all";
  double theta = std::numbers::pi;
  double tol = 1e-12;
  int n = 0;
  int chains = 8;
  int steps = 500;
  std::uint64_t seed = 1;
  bool svg = false;
};

tfh::SymbolSpec load_spec(const Options& opt) {
  tfh::SymbolSpec spec = tfh::load_symbol_spec(opt.spec_path);
  if (opt.n > 0) spec.n = opt.n;
  return spec;
}

tfh::MgfParams mgf_params_from_spec(const tfh::SymbolSpec& spec) {
  // u_k = 2 pi i beta_k maps the stored jump data to MGF exponents
  tfh::MgfParams p;
  p.V = spec.V;
  p.W = spec.W;
  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  p.alphas.push_back(spec.singularities[0].alpha);
  for (std::size_t k = 1; k < spec.singularities.size(); ++k) {
    p.alphas.push_back(spec.singularities[k].alpha);
    p.us.push_back(two_pi_i * spec.singularities[k].beta);
    p.thetas.push_back(spec.singularities[k].theta);
  }
  return p;
}

int cmd_eqm(const Options& opt) {
  auto spec = load_spec(opt);
  auto psi = tfh::equilibrium_density(spec.V);
  std::cout << "equilibrium density psi for the supplied potential\n";
  std::cout << "  min psi = " << fmt17(psi.min_value) << " at theta = "
            << fmt17(psi.argmin_theta) << "\n";
  std::cout << "  regular (one-cut): " << (psi.regular ? "yes" : "NO") << "\n";
  if (!psi.regular) {
    std::cout << "  asymptotic expansions do not apply to this potential\n";
  }
  auto f = open_out(opt.out_dir, "psi.csv");
  f << "k,re,im\n";
  for (const auto& [k, c] : psi.psi.coeffs()) {
    f << k << "," << fmt17(c.real()) << "," << fmt17(c.imag()) << "\n";
  }
  return kExitOk;
}

int cmd_asymp(const Options& opt) {
  auto spec = load_spec(opt);
  auto full = tfh::thm11_constants(spec);
  auto v0 = tfh::thm41_constants(spec.W, spec.singularities);
  auto pot = tfh::prop44_constants(spec);
  auto pr = [](const char* name, cplx v) {
    std::cout << "  " << name << " = " << fmt17(v.real()) << " + "
              << fmt17(v.imag()) << "i\n";
  };
  std::cout << "log D_n ~ C1 n^2 + C2 n + C3 log n + C4, error exponent "
            << fmt17(full.error_exponent) << "\n";
  pr("C1", full.constants[0]);
  pr("C2", full.constants[1]);
  pr("C3", full.constants[2]);
  pr("C4", full.constants[3]);
  pr("D2", v0.constants[0]);
  pr("D3", v0.constants[1]);
  pr("D4", v0.constants[2]);
  pr("c1", pot.constants[0]);
  pr("c2", pot.constants[1]);
  pr("c3", pot.constants[2]);
  double resid = std::abs(full.constants[0] - pot.constants[0]) +
                 std::abs(full.constants[1] - v0.constants[0] - pot.constants[1]) +
                 std::abs(full.constants[2] - v0.constants[1]) +
                 std::abs(full.constants[3] - v0.constants[2] - pot.constants[2]);
  std::cout << "  decomposition residual = " << fmt17(resid) << "\n";
  auto f = open_out(opt.out_dir, "asymp.csv");
  f << "name,re,im\n";
  const char* names[] = {"C1", "C2", "C3", "C4"};
  for (int i = 0; i < 4; ++i) {
    f << names[i] << "," << fmt17(full.constants[i].real()) << ","
      << fmt17(full.constants[i].imag()) << "\n";
  }
  return kExitOk;
}

int cmd_logdet(const Options& opt) {
  auto spec = load_spec(opt);
  if (spec.n < 1) throw std::domain_error("logdet: need --n or n in the spec");
  tfh::CoeffTable tab = tfh::fourier_coeffs(spec, std::max(spec.n, 2), opt.tol);
  tfh::LogDet ld = tfh::logdet_auto(tab, spec.n);
  std::cout << "log|D_n| = " << fmt17(ld.total_log_modulus()) << ", phase = "
            << fmt17(ld.phase) << " (scale correction "
            << fmt17(ld.scale_correction) << ")\n";
  auto f = open_out(opt.out_dir, "logdet.csv");
  f << "n,log_modulus,phase,scale_correction\n";
  f << spec.n << "," << fmt17(ld.total_log_modulus()) << "," << fmt17(ld.phase)
    << "," << fmt17(ld.scale_correction) << "\n";
  return kExitOk;
}

int cmd_convergence(const Options& opt) {
  auto spec = load_spec(opt);
  auto ns = parse_grid(opt.grid_text);
  tfh::ConvergenceStudy study;
  if (opt.target == "thm11") {
    study = tfh::convergence_study(spec, ns, tfh::Target::thm11, opt.tol);
  } else if (opt.target == "thm41") {
    study = tfh::convergence_study(spec, ns, tfh::Target::thm41, opt.tol);
  } else if (opt.target == "thm17") {
    study = tfh::convergence_study_mgf(mgf_params_from_spec(spec), ns, opt.tol);
  } else {
    throw std::invalid_argument("unknown target " + opt.target);
  }
  auto f = open_out(opt.out_dir, "convergence.csv");
  f << "n,exact_re,exact_im,predicted_re,predicted_im,abs_diff\n";
  for (const auto& r : study.rows) {
    f << r.n << "," << fmt17(r.exact.real()) << "," << fmt17(r.exact.imag())
      << "," << fmt17(r.predicted.real()) << "," << fmt17(r.predicted.imag())
      << "," << fmt17(r.abs_diff) << "\n";
    std::cout << "n = " << r.n << "  |diff| = " << fmt17(r.abs_diff)
              << (r.floored ? "  [floor, excluded from fit]" : "") << "\n";
  }
  std::cout << "fitted slope (top half of grid): " << fmt17(study.slope)
            << " from " << study.fit_points << " points\n";
  if (opt.svg) write_convergence_svg(opt.out_dir, study);
  return kExitOk;
}

int cmd_mgf(const Options& opt) {
  auto spec = load_spec(opt);
  if (spec.n < 1) throw std::domain_error("mgf: need --n or n in the spec");
  tfh::MgfQuery q{mgf_params_from_spec(spec), spec.n};
  cplx lv = tfh::exact_log_mgf(q, opt.tol);
  auto pred = tfh::thm17_constants(q.params);
  cplx plv = pred.expansion.predict_log(double(spec.n));
  std::cout << "log E = " << fmt17(lv.real()) << " + " << fmt17(lv.imag())
            << "i\n";
  std::cout << "thm17 prediction = " << fmt17(plv.real()) << " + "
            << fmt17(plv.imag()) << "i  (|diff| = " << fmt17(std::abs(lv - plv))
            << ")\n";
  auto f = open_out(opt.out_dir, "mgf.csv");
  f << "n,exact_re,exact_im,predicted_re,predicted_im,abs_diff\n";
  f << spec.n << "," << fmt17(lv.real()) << "," << fmt17(lv.imag()) << ","
    << fmt17(plv.real()) << "," << fmt17(plv.imag()) << ","
    << fmt17(std::abs(lv - plv)) << "\n";
  return kExitOk;
}

int cmd_cumulants(const Options& opt) {
  auto spec = load_spec(opt);
  if (spec.n < 1) throw std::domain_error("cumulants: need --n or n in the spec");
  tfh::StatQuery q;
  q.V = spec.V;
  q.n = spec.n;
  q.theta = opt.theta;
  tfh::StatKind kind;
  if (opt.stat == "smooth") {
    kind = tfh::StatKind::smooth;
    q.W = spec.W;
  } else if (opt.stat == "log") {
    kind = tfh::StatKind::log_abs;
  } else if (opt.stat == "counting") {
    kind = tfh::StatKind::counting;
  } else {
    throw std::invalid_argument("unknown statistic " + opt.stat);
  }
  q.kind = kind;
  auto exact = tfh::exact_cumulants(q);
  auto pred = tfh::predicted_cumulants(kind, q.V, q.W, q.theta, q.n);
  auto f = open_out(opt.out_dir, "cumulants.csv");
  f << "order,exact,predicted,abs_diff,stderr_if_sampled\n";
  for (std::size_t j = 0; j < exact.size(); ++j) {
    double diff = std::abs(exact[j] - pred[j]);
    f << (j + 1) << "," << fmt17(exact[j]) << "," << fmt17(pred[j]) << ","
      << fmt17(diff) << ",\n";
    std::cout << "kappa_" << (j + 1) << " exact = " << fmt17(exact[j])
              << "  predicted = " << fmt17(pred[j]) << "  |diff| = "
              << fmt17(diff) << "\n";
  }
  return kExitOk;
}

int cmd_sample(const Options& opt) {
  auto spec = load_spec(opt);
  if (spec.n < 2) throw std::domain_error("sample: need --n >= 2");
  auto batch = tfh::mcmc_sample(spec.V, spec.n, opt.chains, opt.steps, opt.seed);
  auto psi = tfh::equilibrium_density(spec.V);
  if (!psi.regular) throw std::domain_error("sample: potential not regular");
  auto rep = tfh::empirical_statistics(batch, psi, opt.theta);
  std::cout << "chains = " << batch.chains << ", kept samples/chain = "
            << batch.samples << ", acceptance = "
            << fmt17(batch.acceptance_rate) << "\n";
  std::cout << "N_n(" << fmt17(opt.theta) << "): mean = "
            << fmt17(rep.count_mean) << " (se " << fmt17(rep.count_mean_se)
            << "), var = " << fmt17(rep.count_var) << " (se "
            << fmt17(rep.count_var_se) << ")\n";
  for (std::size_t e = 0; e < rep.epsilons.size(); ++e) {
    std::cout << "rigidity eps = " << rep.epsilons[e]
              << ": counting freq = " << fmt17(rep.rigidity_counting[e])
              << ", ordered freq = " << fmt17(rep.rigidity_ordered[e]) << "\n";
  }
  auto f = open_out(opt.out_dir, "sample_stats.csv");
  f << "quantity,value,stderr\n";
  f << "count_mean," << fmt17(rep.count_mean) << "," << fmt17(rep.count_mean_se)
    << "\n";
  f << "count_var," << fmt17(rep.count_var) << "," << fmt17(rep.count_var_se)
    << "\n";
  f << "fluct_mean," << fmt17(rep.fluct_mean) << ",\n";
  f << "fluct_var," << fmt17(rep.fluct_var) << ",\n";
  f << "fluct_kurtosis," << fmt17(rep.fluct_kurt) << ",\n";
  for (std::size_t e = 0; e < rep.epsilons.size(); ++e) {
    f << "rigidity_counting_eps" << rep.epsilons[e] << ","
      << fmt17(rep.rigidity_counting[e]) << ",\n";
    f << "rigidity_ordered_eps" << rep.epsilons[e] << ","
      << fmt17(rep.rigidity_ordered[e]) << ",\n";
  }
  tfh::save_batch(batch, (std::filesystem::path(opt.out_dir) / "samples.bin")
                             .string());
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  auto checks = tfh::verify_suite(opt.suite, opt.seed);
  bool all_pass = true;
  for (const auto& c : checks) {
    std::printf("[%s] %-58s residual %.3e (tol %.1e)\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual, c.tol);
    all_pass = all_pass && c.pass;
  }
  return all_pass ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz determinants with one-cut potentials and "
               "Fisher-Hartwig singularities"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    if (needs_spec) {
      sub->add_option("--spec", opt.spec_path, "symbol spec file")->required();
    }
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--tol", opt.tol, "quadrature tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "random seed");
  };

  auto* eqm = app.add_subcommand("eqm", "equilibrium density report");
  add_common(eqm, true);
  auto* asymp = app.add_subcommand("asymp", "asymptotic constants");
  add_common(asymp, true);
  auto* logdet = app.add_subcommand("logdet", "exact log-determinant");
  add_common(logdet, true);
  logdet->add_option("--n", opt.n, "matrix size");
  auto* conv = app.add_subcommand("convergence", "exact vs predicted over an n-grid");
  add_common(conv, true);
  conv->add_option("--n-grid", opt.grid_text, "a:b:step, a:b:xF, or list")
      ->required();
  conv->add_option("--target", opt.target, "thm11 | thm41 | thm17");
  conv->add_flag("--svg", opt.svg, "write log-log SVG plot");
  auto* mgf = app.add_subcommand("mgf", "exact moment generating function");
  add_common(mgf, true);
  mgf->add_option("--n", opt.n, "matrix size");
  auto* cum = app.add_subcommand("cumulants", "exact vs predicted cumulants");
  add_common(cum, true);
  cum->add_option("--n", opt.n, "matrix size");
  cum->add_option("--stat", opt.stat, "smooth | log | counting");
  cum->add_option("--theta", opt.theta, "statistic location");
  auto* sample = app.add_subcommand("sample", "MCMC sampler and empirical checks");
  add_common(sample, true);
  sample->add_option("--n", opt.n, "number of angles");
  sample->add_option("--chains", opt.chains, "independent chains");
  sample->add_option("--steps", opt.steps, "sweeps per chain (burn-in = 1/5)");
  sample->add_option("--theta", opt.theta, "counting location");
  auto* verify = app.add_subcommand("verify", "bundled verification suites");
  verify->add_option("--suite", opt.suite,
                     "identities | section2 | special | quadrature | all");
  verify->add_option("--seed", opt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitParse : kExitOk;
  }

  try {
    if (eqm->parsed()) return cmd_eqm(opt);
    if (asymp->parsed()) return cmd_asymp(opt);
    if (logdet->parsed()) return cmd_logdet(opt);
    if (conv->parsed()) return cmd_convergence(opt);
    if (mgf->parsed()) return cmd_mgf(opt);
    if (cum->parsed()) return cmd_cumulants(opt);
    if (sample->parsed()) return cmd_sample(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
