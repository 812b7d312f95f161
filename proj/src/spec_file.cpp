#include "tfh/spec_file.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tfh {

SymbolSpec parse_symbol_spec(std::istream& in) {
  std::map<int, cplx> v, w;
  std::vector<Singularity> sings;
  int n = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": " +
                                  what);
    };
    if (key == "n") {
      if (!(ls >> n)) fail("expected integer after 'n'");
    } else if (key == "V" || key == "W") {
      int k;
      double re, im;
      if (!(ls >> k >> re >> im)) fail("expected 'k re im'");
      (key == "V" ? v : w)[k] += cplx(re, im);
    } else if (key == "sing") {
      Singularity s;
      double ar, ai, br, bi;
      if (!(ls >> s.theta >> ar >> ai >> br >> bi)) {
        fail("expected 'theta a_re a_im b_re b_im'");
      }
      s.alpha = cplx(ar, ai);
      s.beta = cplx(br, bi);
      sings.push_back(s);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  return SymbolSpec::make(TrigPolynomial(std::move(v)),
                          TrigPolynomial(std::move(w)), std::move(sings), n);
}

SymbolSpec load_symbol_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open spec file: " + path);
  return parse_symbol_spec(f);
}

void write_symbol_spec(const SymbolSpec& spec, std::ostream& out) {
  char buf[160];
  out << "n " << spec.n << "\n";
  for (const auto& [k, c] : spec.V.coeffs()) {
    std::snprintf(buf, sizeof(buf), "V %d %.17g %.17g\n", k, c.real(), c.imag());
    out << buf;
  }
  for (const auto& [k, c] : spec.W.coeffs()) {
    std::snprintf(buf, sizeof(buf), "W %d %.17g %.17g\n", k, c.real(), c.imag());
    out << buf;
  }
  for (const auto& s : spec.singularities) {
    if (s.trivial() && s.theta == 0.0) continue;
    std::snprintf(buf, sizeof(buf), "sing %.17g %.17g %.17g %.17g %.17g\n",
                  s.theta, s.alpha.real(), s.alpha.imag(), s.beta.real(),
                  s.beta.imag());
    out << buf;
  }
}

}  // namespace tfh
