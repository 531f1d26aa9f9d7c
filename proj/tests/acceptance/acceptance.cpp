#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>

#include <json.hpp>

#include "cusped/alexander.hpp"
#include "cusped/cuspterms.hpp"
#include "cusped/laplace.hpp"
#include "cusped/ruelle.hpp"
#include "cusped/spectrum.hpp"
#include "cusped/verdict.hpp"
#include "oracles.hpp"

using namespace cusped;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PresentationFile load(const char* name) { return parse_presentation(oracle::read_text(oracle::data_path(name))); }

std::vector<Complex> rho_values(const GeneratorData& g) {
  std::vector<Complex> v;
  for (std::size_t i = 0; i < g.gens.size(); ++i) v.push_back(g.rho.value_complex(GroupWord::generator(static_cast<int>(i))));
  return v;
}

Spectrum fig8_spectrum(double cutoff) {
  const auto g = parse_generators(oracle::read_text(oracle::data_path("fig8.gens")));
  return enumerate_classes(g.gens, rho_values(g), 8, cutoff);
}

Outcome transform_algebra() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<HeatAtom> atoms;
  for (double l : {0.0, 0.5, 1.0, 4.0}) atoms.push_back(HeatAtom::exp(l));
  for (double nu : {-0.5, 0.0, 0.5, 1.0}) atoms.push_back(HeatAtom::power(nu));
  for (double l : {0.5, 1.0, 2.0}) atoms.push_back(HeatAtom::theta(l));
  double worst = 0.0;
  for (const auto& a : atoms)
    for (double z : {0.75, 1.0, 2.0, 3.0}) {
      const Complex exact = evaluate(lprime_closed(a), z);
      worst = std::max(worst, std::abs(quadrature_lprime(heat_function(a), z) - exact) / std::abs(exact));
    }
  const double el = seconds_since(t0);
  o.require(worst <= 1e-8, "relative error " + sci(worst));
  o.require(el < 10.0, "took " + std::to_string(el) + " s");
  if (o.ok) o.detail = "worst relative error " + sci(worst);
  return o;
}

Outcome closed_forms() {
  Outcome o;
  const double vol = 2.029883212819307;
  const auto id = identity_lprime(vol);
  MeroSum m0, m1;
  m0.polyPart = {0, 0, Scalar::numeric(-pi * vol)};
  m1.polyPart = {Scalar::numeric(2.0 * pi * vol), 0, Scalar::numeric(-2.0 * pi * vol)};
  m0.normalize();
  m1.normalize();
  o.require((id.M0 - m0).is_zero(), "identity M0");
  o.require((id.M1 - m1).is_zero(), "identity M1");
  const MeroSum j0 = MeroSum::digamma_constant(2, 1.0) + MeroSum::digamma(-2, 1.0);
  const MeroSum j1 = MeroSum::digamma_constant(2, 1.0) - MeroSum::digamma(1, 0.0) - MeroSum::digamma(1, 2.0);
  o.require(j0_lprime() == j0, "J0 digamma sum");
  o.require(j1_lprime() == j1, "J1 digamma sum");
  o.require(threshold_lprime() == MeroSum::pole(0.0, Rational(-1, 2)), "threshold");
  o.require(unipotent_lprime({false, 1.0, pi}).combination.is_zero(), "nontrivial unipotent combination");
  o.require(unipotent_lprime({true, 1.0, 2.584981759078843}).combination.is_zero(), "trivial unipotent combination");
  return o;
}

Outcome alexander_exactness() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto tre = load("trefoil.pres");
  const auto fig = load("fig8.pres");
  const auto at = alexander_invariant(tre.presentation, tre.rho, tre.epsilon);
  const auto af = alexander_invariant(fig.presentation, fig.rho, fig.epsilon);
  o.require(at.char1.normalized() == LaurentPoly::from_integers(0, {1, -1, 1}), "trefoil char1");
  o.require(af.char1.normalized() == LaurentPoly::from_integers(0, {1, -3, 1}), "figure-eight char1");
  o.require(at.ordAtOne == 1 && af.ordAtOne == 1, "ordAtOne");
  o.require(at.h1 == 1 && af.h1 == 1, "h1");
  o.require(oracle::fox_determinant_agrees(tre, at) && oracle::fox_determinant_agrees(fig, af), "Fox oracle, trivial");
  for (const char* name : {"fig8_zeta5.pres"}) {
    const auto f = load(name);
    const auto a = alexander_invariant(f.presentation, f.rho, f.epsilon);
    const auto r = order_inequality_check(a);
    o.require(r.inequalityHolds && a.ordAtOne <= -a.h1, std::string(name) + " inequality");
    o.require(r.equalityHolds == (a.ordAtOne == -a.h1), std::string(name) + " equality flag");
    o.require(!a.semisimpleAtOne || r.equalityHolds, std::string(name) + " semisimple implies equality");
    o.require(oracle::fox_determinant_agrees(f, a), std::string(name) + " Fox oracle");
  }
  const double el = seconds_since(t0);
  o.require(el < 5.0, "took " + std::to_string(el) + " s");
  return o;
}

Outcome fried() {
  Outcome o;
  const double single = std::abs(fried_residual(orbit_powers(1.0, 0.7, std::polar(1.0, 0.3), 60), 4.0).value);
  o.require(single <= 1e-12, "single orbit residual " + sci(single));
  const auto r = fried_residual(fig8_spectrum(3.0), 5.0);
  o.require(std::abs(r.value) <= r.tailBound, "figure-eight residual above tail bound");
  if (o.ok)
    o.detail = "single orbit " + sci(single) + ", figure-eight " + sci(std::abs(r.value)) +
               " <= " + sci(r.tailBound);
  return o;
}

Outcome heat_and_log_derivative() {
  Outcome o;
  const Spectrum s3 = fig8_spectrum(3.0);
  auto h0 = [&](double t) {
    const Complex h = hyperbolic_heat(s3, 0, t);
    return h == Complex(0.0) ? h : std::exp(t) * h;
  };
  auto h1 = [&](double t) { return hyperbolic_heat(s3, 1, t); };
  const double d0 = std::abs(quadrature_lprime(h0, 3.0) - y_series(s3, 0, 4.0).value);
  const double d1 = std::abs(quadrature_lprime(h1, 3.0) - y_series(s3, 1, 4.0).value);
  o.require(d0 <= 1e-6 && d1 <= 1e-6, "heat quadrature vs Y series");
  const Spectrum s5 = fig8_spectrum(5.0);
  const double dl = std::abs(log_derivative_numeric(s5, 4.0) - log_derivative_series(s5, 4.0).value);
  o.require(dl <= 1e-6, "log derivative " + sci(dl));
  return o;
}

Outcome epstein_checks() {
  Outcome o;
  const Lattice2D sq;
  double sl[7];
  for (int j = 0; j < 7; ++j) {
    const double s = 0.1 / std::pow(2.0, j);
    sl[j] = s * epstein(sq, {}, s).real();
  }
  for (int k = 1; k < 7; ++k)
    for (int j = 6; j >= k; --j) sl[j] = (std::pow(2.0, k) * sl[j] - sl[j - 1]) / (std::pow(2.0, k) - 1.0);
  o.require(std::abs(sl[6] - pi) < 1e-4, "s L(s) limit " + sci(sl[6]));
  const LatticeCharacter alt{{-1.0, 0.0}, {1.0, 0.0}};
  const auto rc = epstein_residue_and_constant(sq, alt);
  o.require(rc.residue == 0.0 && std::isfinite(rc.constant), "nontrivial character at s = 0");
  o.require(std::abs(rc.constant - oracle::alternating_square_row_sum()) < 1e-6, "row-sum oracle at s = 0");
  o.require(std::abs(epstein(sq, alt, 1.0) - oracle::annulus_epstein(sq, alt, 1.0, 300.0)) < 1e-6,
            "annulus oracle at s = 1");
  const Lattice2D L{{1.0, 0.2}, {-0.4, 1.3}};
  for (double c : {0.5, 3.0}) {
    const Complex s(0.4, 0.7);
    const Complex lhs = epstein({c * L.b1, c * L.b2}, alt, s), rhs = std::pow(c, -2.0 * (1.0 + s)) * epstein(L, alt, s);
    o.require(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs), "homogeneity");
  }
  return o;
}

int zeros(const std::vector<Rational>& v) { return static_cast<int>(std::count(v.begin(), v.end(), Rational(0))); }

Outcome spectral_identities() {
  Outcome o;
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> len(0, 6), nz(0, 2), num(1, 40), den(1, 6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto draw = [&] {
    std::vector<Rational> v(nz(rng), Rational(0));
    for (int n = len(rng); n > 0; --n) v.emplace_back(num(rng), den(rng));
    return v;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto e0 = draw(), e1 = draw();
    const auto s = spectral_lprime(e0, e1);
    o.require(s.L1.reflected() == -s.L1, "oddness");
    const Scalar r = residue_at(s.L1, 0.0);
    o.require(r.is_exact() && r == Scalar(2 * (zeros(e1) - zeros(e0))), "residue 2(beta1 - beta0)");
    const Complex z(u(rng), u(rng));
    const Complex a = evaluate(s.L0, 1.0 + z), b = -evaluate(s.L0, 1.0 - z);
    o.require(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)), "functional equation");
  }
  return o;
}

Outcome coherence() {
  Outcome o;
  for (int h0 : {0, 1})
    for (int h1 = 0; h1 <= 10; ++h1)
      for (bool d : {false, true}) {
        if (h0 == 1 && !d) continue;
        const L2Betti b = l2_betti(h0, h1, d);
        const int branch = d ? 2 * (2 * h0 - h1 + 1) : -2 * h1;
        o.require(ruelle_order_prediction(h0, h1, d) == branch && branch == 2 * (2 * b.beta0 - b.beta1),
                  "h0=" + std::to_string(h0) + " h1=" + std::to_string(h1));
      }
  return o;
}

std::pair<int, std::string> run(const std::string& cmd) {
  std::string out;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return {-1, {}};
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome end_to_end(const std::string& cli) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto [c5, j5] = run(cli + " verify " + oracle::data_path("fig8_zeta5.pres"));
  o.require(c5 == 0, "zeta5 exit " + std::to_string(c5));
  if (c5 == 0) o.require(nlohmann::json::parse(j5)["inequalityHolds"] == true, "zeta5 inequality");
  const auto [c1, j1] = run(cli + " verify " + oracle::data_path("fig8.pres"));
  o.require(c1 == 2, "trivial exit " + std::to_string(c1));
  if (c1 == 2) {
    const auto j = nlohmann::json::parse(j1);
    o.require(j["predictedRuelleOrder"] == 4 && j["alexanderBound"] == 4, "4 vs 4");
  }
  const double el = seconds_since(t0);
  o.require(el < 30.0, "took " + std::to_string(el) + " s");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "cusped-zeta";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"transform algebra", transform_algebra},
      {"closed forms", closed_forms},
      {"alexander exactness", alexander_exactness},
      {"fried factorization", fried},
      {"heat terms and log derivative", heat_and_log_derivative},
      {"epstein", epstein_checks},
      {"spectral identities", spectral_identities},
      {"betti coherence", coherence},
      {"end to end", [&] { return end_to_end(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = e.what();
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << "\n";
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
