#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cusped/alexander.hpp"
#include "cusped/cuspterms.hpp"
#include "cusped/errors.hpp"
#include "cusped/ruelle.hpp"
#include "cusped/spectrum.hpp"
#include "cusped/verdict.hpp"
#include "selftest.hpp"

namespace {

using cusped::Complex;
using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitSoftware = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json complex_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

Json mero_json(const cusped::MeroSum& m) { return Json::parse(cusped::to_json(m)); }

Json alexander_json(const cusped::AlexanderData& a) {
  Json j;
  j["char0"] = a.char0.to_string();
  j["char1"] = a.char1.to_string();
  j["char2"] = a.char2.to_string();
  j["ordAtOne"] = a.ordAtOne;
  j["h0"] = a.h0;
  j["h1"] = a.h1;
  j["semisimpleAtOne"] = a.semisimpleAtOne;
  j["h0InfinityVanishes"] = a.h0InfinityVanishes;
  j["h1Divisors"] = Json::array();
  for (const auto& d : a.h1Divisors) j["h1Divisors"].push_back(d.to_string());
  return j;
}

Json report_json(const cusped::TruncationReport& r) {
  Json j;
  j["value"] = complex_json(r.value);
  j["tailBound"] = r.tailBound;
  j["termsUsed"] = r.termsUsed;
  return j;
}

std::string text_of(const Json& j) {
  std::string out;
  for (const auto& [k, v] : j.items()) out += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  return out;
}

struct Output {
  std::string format = "json";
  std::string path;

  void emit(const std::string& body) const {
    if (path.empty()) {
      std::cout << body;
      std::cout.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << body;
  }
  void emit(const Json& j) const { emit(format == "text" ? text_of(j) : j.dump(2) + "\n"); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Alexander invariants and Ruelle zeta machinery for one-cusped hyperbolic 3-manifolds",
               "cusped-zeta"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", out.path, "write to a file instead of stdout");

  int exit_code = 0;
  std::string pres_path, spec_path, gens_path, lattice_path, poles_path;
  double z_re = 0.0, z_im = 0.0, s_re = 0.0, s_im = 0.0, vol = 1.0, cutoff = 3.0, covolume = 1.0, cconst = 0.0;
  int max_word_len = 8;
  bool complete = false, no_close = false, trivial = false, constants = false;

  auto* alex = app.add_subcommand("alexander", "twisted Alexander data of a presentation");
  alex->add_option("presentation", pres_path)->required();
  alex->callback([&] {
    const auto f = cusped::parse_presentation(read_file(pres_path));
    out.emit(alexander_json(cusped::alexander_invariant(f.presentation, f.rho, f.epsilon)));
  });

  auto* betti = app.add_subcommand("betti", "h0, h1 and peripheral triviality");
  betti->add_option("presentation", pres_path)->required();
  betti->callback([&] {
    const auto f = cusped::parse_presentation(read_file(pres_path));
    const auto b = cusped::twisted_betti(f.presentation, f.rho);
    Json j;
    j["h0"] = b.h0;
    j["h1"] = b.h1;
    j["deltaRho"] = cusped::peripheral_trivial(f.presentation, f.rho);
    out.emit(j);
  });

  auto* spectrum = app.add_subcommand("spectrum", "length spectra");
  spectrum->require_subcommand(1);
  auto* enumerate = spectrum->add_subcommand("enumerate", "enumerate closed geodesics from matrix generators");
  enumerate->add_option("generators", gens_path)->required();
  enumerate->add_option("--max-word-len", max_word_len)->check(CLI::Range(1, 16));
  enumerate->add_option("--cutoff", cutoff)->check(CLI::Range(0.0, 12.0));
  enumerate->add_flag("--complete", complete, "declare the listing complete up to the cutoff");
  enumerate->add_flag("--no-close-powers", no_close, "only powers whose words fit in max-word-len");
  enumerate->callback([&] {
    const auto g = cusped::parse_generators(read_file(gens_path));
    std::vector<Complex> rho;
    for (std::size_t i = 0; i < g.gens.size(); ++i)
      rho.push_back(g.rho.value_complex(cusped::GroupWord::generator(static_cast<int>(i))));
    cusped::EnumerateOptions o;
    o.closePowers = !no_close;
    o.complete = complete;
    o.latticeCovolume = g.latticeCovolume;
    o.volume = g.volume;
    const auto s = cusped::enumerate_classes(g.gens, rho, max_word_len, cutoff, o);
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
    out.emit(cusped::format_spectrum(s));
  });

  auto* ruelle = app.add_subcommand("ruelle", "Ruelle Euler product");
  ruelle->require_subcommand(1);
  auto* eval = ruelle->add_subcommand("eval", "truncated log Euler product at z");
  eval->add_option("spectrum", spec_path)->required();
  eval->add_option("--z", z_re)->required();
  eval->add_option("--z-im", z_im);
  eval->callback([&] {
    const auto s = cusped::parse_spectrum(read_file(spec_path));
    const Complex z(z_re, z_im);
    const auto lr = cusped::log_euler_product(s, z);
    Json j;
    j["z"] = complex_json(z);
    j["logR"] = report_json(lr);
    j["R"] = complex_json(std::exp(lr.value));
    out.emit(j);
  });

  auto* fried = app.add_subcommand("fried", "Fried factorization check");
  fried->require_subcommand(1);
  auto* check = fried->add_subcommand("check", "residual against the truncation bound");
  check->add_option("spectrum", spec_path)->required();
  check->add_option("--z", z_re)->required();
  check->add_option("--z-im", z_im);
  check->callback([&] {
    const auto s = cusped::parse_spectrum(read_file(spec_path));
    const Complex z(z_re, z_im);
    const auto r = cusped::fried_residual(s, z);
    Json j;
    j["z"] = complex_json(z);
    j["residual"] = std::abs(r.value);
    j["tailBound"] = r.tailBound;
    j["withinBound"] = std::abs(r.value) <= r.tailBound;
    out.emit(j);
    if (std::abs(r.value) > r.tailBound) exit_code = kExitSoftware;
  });

  auto* terms = app.add_subcommand("terms", "closed-form transforms of the non-hyperbolic terms");
  terms->require_subcommand(1);
  auto* identity = terms->add_subcommand("identity", "identity contributions");
  identity->add_option("--vol", vol)->check(CLI::PositiveNumber);
  identity->callback([&] {
    const auto t = cusped::identity_lprime(vol);
    Json j;
    j["M0"] = mero_json(t.M0);
    j["M1"] = mero_json(t.M1);
    out.emit(j);
  });
  auto* unipotent = terms->add_subcommand("unipotent", "unipotent contributions");
  unipotent->add_flag("--trivial", trivial, "character trivial on the cusp subgroup");
  unipotent->add_option("--covolume", covolume)->check(CLI::PositiveNumber);
  unipotent->add_option("--constant", cconst, "Epstein constant C");
  unipotent->add_option("--lattice", lattice_path, "take covolume, C and triviality from a lattice file");
  unipotent->callback([&] {
    cusped::UnipotentCase c{trivial, covolume, cconst};
    if (!lattice_path.empty()) {
      const auto lf = cusped::parse_lattice(read_file(lattice_path));
      c.trivialRestriction = lf.character.is_trivial();
      c.covolume = lf.lattice.covolume();
      c.constant = cusped::epstein_residue_and_constant(lf.lattice, lf.character).constant;
    }
    const auto u = cusped::unipotent_lprime(c);
    Json j;
    j["U0shifted"] = mero_json(u.U0shifted);
    j["U1"] = mero_json(u.U1);
    j["combination"] = mero_json(u.combination);
    out.emit(j);
  });
  auto* threshold = terms->add_subcommand("threshold", "threshold contribution");
  threshold->callback([&] { out.emit(mero_json(cusped::threshold_lprime())); });
  auto* scattering = terms->add_subcommand("scattering", "scattering partial fractions from pole data");
  scattering->add_option("poles", poles_path)->required();
  scattering->callback([&] {
    const auto t = cusped::scattering_lprime(cusped::parse_scattering(read_file(poles_path)));
    Json j;
    j["S0"] = mero_json(t.S0);
    j["S0shifted"] = mero_json(t.S0shifted);
    j["S1"] = mero_json(t.S1);
    out.emit(j);
  });

  auto* epstein = app.add_subcommand("epstein", "Epstein L-function of a lattice");
  epstein->add_option("lattice", lattice_path)->required();
  epstein->add_option("--s", s_re);
  epstein->add_option("--s-im", s_im);
  epstein->add_flag("--constants", constants, "also report the residue and constant at s = 0");
  epstein->callback([&] {
    const auto lf = cusped::parse_lattice(read_file(lattice_path));
    const Complex s(s_re, s_im);
    Json j;
    j["s"] = complex_json(s);
    j["value"] = complex_json(cusped::epstein(lf.lattice, lf.character, s));
    if (constants) {
      const auto rc = cusped::epstein_residue_and_constant(lf.lattice, lf.character);
      j["residue"] = rc.residue;
      j["constant"] = rc.constant;
      j["errorEstimate"] = rc.errorEstimate;
    }
    out.emit(j);
  });

  auto* verify = app.add_subcommand("verify", "compare the predicted Ruelle order with the Alexander side");
  verify->add_option("presentation", pres_path)->required();
  verify->callback([&] {
    const auto r = cusped::main_conjecture_report(cusped::parse_presentation(read_file(pres_path)));
    const std::string body = cusped::to_json(r);
    out.emit(out.format == "text" ? text_of(Json::parse(body)) : body + "\n");
    exit_code = r.exit_code();
  });

  auto* selftest = app.add_subcommand("selftest", "run the built-in property checks");
  selftest->callback([&] { exit_code = cusped_cli::run_selftest(std::cout) ? 0 : kExitSoftware; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cusped::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return e.kind() == cusped::ErrorKind::Computation ? kExitSoftware : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSoftware;
  }
  return exit_code;
}
