#include "cusped/cuspterms.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "cusped/errors.hpp"
#include "cusped/parallel.hpp"

namespace cusped {

namespace {

constexpr double kPi = std::numbers::pi;
// Terms with pi |v|^2 above this are below 1e-21 relative.
constexpr double kEwaldCut = 50.0;

Complex read_complex(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError(std::string(what) + " must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(e.what());
  }
}

double read_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return 0.0;
  if (!j[key].is_number()) throw FormatError(std::string(key) + " must be a number");
  return j[key].get<double>();
}

// theta in (-1/2, 1/2] with v = exp(2 pi i theta)
double phase_fraction(Complex v) {
  double th = std::arg(v) / (2.0 * kPi);
  if (th <= -0.5) th += 1.0;
  if (std::abs(th) < 1e-15) th = 0.0;
  return th;
}

// Sum of f over m b1 + n b2 with pi |v|^2 <= cut, excluding skip (if any).
// Rows are summed in parallel and combined in a fixed order.
template <class F>
Complex lattice_sum(Complex b1, Complex b2, double area, double off1, double off2, bool skipZero, F f) {
  const double radius = std::sqrt(kEwaldCut / kPi);
  const long long mmax = static_cast<long long>(std::ceil(radius * std::abs(b2) / area + std::abs(off1))) + 1;
  const long long nmax = static_cast<long long>(std::ceil(radius * std::abs(b1) / area + std::abs(off2))) + 1;
  const std::size_t rows = static_cast<std::size_t>(2 * mmax + 1);
  std::vector<Complex> row_sums(rows);
  parallel_for(rows, [&](std::size_t i) {
    const long long m = static_cast<long long>(i) - mmax;
    std::vector<Complex> terms;
    for (long long n = -nmax; n <= nmax; ++n) {
      if (skipZero && m == 0 && n == 0) continue;
      const Complex v = (static_cast<double>(m) + off1) * b1 + (static_cast<double>(n) + off2) * b2;
      const double x = kPi * std::norm(v);
      if (x > kEwaldCut || x == 0.0) continue;
      terms.push_back(f(m, n, x));
    }
    row_sums[i] = pairwise_sum(terms);
  });
  return pairwise_sum(row_sums);
}

}  // namespace

void Lattice2D::validate() const {
  const double scale = std::abs(b1) * std::abs(b2);
  if (!(scale > 0) || !std::isfinite(scale) || covolume() <= 1e-12 * scale)
    throw ValidationError("lattice basis is degenerate", "DegenerateLattice");
}

bool LatticeCharacter::is_trivial(double tol) const { return std::abs(v1 - 1.0) <= tol && std::abs(v2 - 1.0) <= tol; }

Complex LatticeCharacter::operator()(long long m, long long n) const {
  return std::pow(v1, static_cast<double>(m)) * std::pow(v2, static_cast<double>(n));
}

void LatticeCharacter::validate() const {
  if (std::abs(std::abs(v1) - 1.0) > 1e-12 || std::abs(std::abs(v2) - 1.0) > 1e-12)
    throw ValidationError("lattice character values must have modulus 1", "NonUnitaryCharacter");
}

LatticeFile parse_lattice(const std::string& json_text) {
  const auto j = parse_json(json_text);
  if (!j.is_object() || !j.contains("b1") || !j.contains("b2")) throw FormatError("lattice needs b1 and b2");
  LatticeFile out;
  out.lattice.b1 = read_complex(j["b1"], "b1");
  out.lattice.b2 = read_complex(j["b2"], "b2");
  if (j.contains("chi")) {
    const auto& c = j["chi"];
    if (!c.is_array() || c.size() != 2) throw FormatError("chi must hold two values");
    out.character.v1 = read_complex(c[0], "chi[0]");
    out.character.v2 = read_complex(c[1], "chi[1]");
  }
  out.lattice.validate();
  out.character.validate();
  return out;
}

IdentityTransforms identity_lprime(double vol) {
  if (!(vol > 0)) throw ValidationError("volume must be positive");
  IdentityTransforms out;
  out.M0.polyPart = {0, 0, Scalar::numeric(-kPi * vol)};
  out.M0.normalize();
  out.M1.polyPart = {Scalar::numeric(2.0 * kPi * vol), 0, Scalar::numeric(-2.0 * kPi * vol)};
  out.M1.normalize();
  return out;
}

double identity_heat(double vol, double t, int j) {
  if (!(t > 0)) throw ValidationError("identity_heat needs t > 0");
  const double sp = std::sqrt(kPi);
  if (j == 0) return vol * sp / 4.0 * std::pow(t, -1.5) * std::exp(-t);
  if (j == 1) return 2.0 * vol * sp / 2.0 * (std::pow(t, -0.5) + 0.5 * std::pow(t, -1.5));
  throw ValidationError("identity_heat index must be 0 or 1");
}

Complex epstein(const Lattice2D& L, const LatticeCharacter& chi, Complex s) {
  L.validate();
  chi.validate();
  if (!(s.real() > -1.0))
    throw ValidationError("epstein is continued only to Re s > -1", "ConvergenceRegionError");
  const bool trivial = chi.is_trivial();
  if (trivial && std::abs(s) < 1e-14) throw ComputationError("PoleEvaluation", "epstein has a pole at s = 0");

  const double area = L.covolume();
  const double root = std::sqrt(area);
  const Complex b1 = L.b1 / root, b2 = L.b2 / root;
  // Dual basis of the covolume-one lattice: <d_i, b_j> = delta_ij.
  const double det = b1.real() * b2.imag() - b1.imag() * b2.real();
  const Complex d1(b2.imag() / det, -b2.real() / det);
  const Complex d2(-b1.imag() / det, b1.real() / det);
  const double th1 = trivial ? 0.0 : phase_fraction(chi.v1);
  const double th2 = trivial ? 0.0 : phase_fraction(chi.v2);
  const bool k_in_dual = th1 == 0.0 && th2 == 0.0;

  const Complex sp = 1.0 + s;
  const Complex direct = lattice_sum(b1, b2, 1.0, 0.0, 0.0, true, [&](long long m, long long n, double x) {
    return chi(m, n) * upper_gamma(sp, x) * std::pow(x, -sp);
  });
  const Complex dual = lattice_sum(d1, d2, 1.0, th1, th2, true, [&](long long, long long, double x) {
    return upper_gamma(1.0 - sp, x) * std::pow(x, sp - 1.0);
  });
  // The (p, q) = (0, 0) dual point is skipped above; it only matters when
  // k is nonzero.
  Complex extra = 0.0;
  if (!k_in_dual) {
    const double x = kPi * std::norm(th1 * d1 + th2 * d2);
    extra = upper_gamma(1.0 - sp, x) * std::pow(x, sp - 1.0);
  } else {
    extra = 1.0 / (sp - 1.0);
  }
  const Complex bracket = direct + dual + extra - 1.0 / sp;
  const Complex value = std::pow(kPi, sp) * std::exp(-log_gamma(sp)) * bracket;
  return value * std::pow(area, -sp);
}

EpsteinConstants epstein_residue_and_constant(const Lattice2D& L, const LatticeCharacter& chi) {
  EpsteinConstants out;
  const bool trivial = chi.is_trivial();
  out.residue = trivial ? kPi / L.covolume() : 0.0;
  constexpr int levels = 7;
  std::vector<std::vector<double>> table(levels);
  double h = 0.1;
  for (int i = 0; i < levels; ++i, h *= 0.5) {
    table[i].push_back(epstein(L, chi, h).real() - out.residue / h);
    double factor = 2.0;
    for (int k = 1; k <= i; ++k, factor *= 2.0)
      table[i].push_back(table[i][k - 1] + (table[i][k - 1] - table[i - 1][k - 1]) / (factor - 1.0));
  }
  out.constant = table[levels - 1][levels - 1];
  out.errorEstimate = std::abs(out.constant - table[levels - 2][levels - 2]);
  if (!std::isfinite(out.constant) || out.errorEstimate > 1e-6)
    throw ComputationError("ExtrapolationUnstable",
                           "Richardson table did not settle (estimate " + std::to_string(out.errorEstimate) + ")");
  return out;
}

double unipotent_kernel_trace(int j, double t) {
  if (!(t > 0)) throw ValidationError("unipotent_kernel_trace needs t > 0");
  const double g = std::sqrt(kPi / t);
  const double k0 = std::exp(-t) * g / (4.0 * kPi * kPi);
  if (j == 0) return k0;
  if (j == 1) return g / (2.0 * kPi * kPi) + k0;
  throw ValidationError("kernel index must be 0 or 1");
}

MeroSum j0_lprime() {
  return MeroSum::digamma_constant(2, 1.0) + MeroSum::digamma(-2, 1.0);
}

MeroSum j1_lprime() {
  return MeroSum::digamma_constant(2, 1.0) + MeroSum::digamma(-1, 0.0) + MeroSum::digamma(-1, 2.0);
}

UnipotentTransforms unipotent_lprime(const UnipotentCase& c) {
  if (!(c.covolume > 0)) throw ValidationError("covolume must be positive");
  UnipotentTransforms out;
  const Scalar k = Scalar::numeric(c.covolume * c.constant / kPi);
  out.U0shifted = MeroSum::constant(k);
  out.U1 = MeroSum::constant(Scalar(2) * k);
  if (c.trivialRestriction) {
    // 2 pi T'(k_{j,t}, 0) = 2 J-terms; the principal value parts vanish.
    out.U0shifted = out.U0shifted + Scalar(2) * j0_lprime().shifted(-1.0);
    out.U1 = out.U1 + Scalar(2) * (j1_lprime() + j1_lprime());
  }
  out.combination = out.U0shifted - out.U1 + out.U0shifted.shifted(2.0);
  return out;
}

MeroSum threshold_lprime() { return MeroSum::pole(0.0, Rational(-1, 2)); }

void ScatteringPoles::validate() const {
  for (const auto* list : {&poles0, &poles1})
    for (const Complex& a : *list)
      if (a.real() == 0.0)
        throw ValidationError("scattering pole on the imaginary axis", "PoleOnAxis");
}

ScatteringPoles parse_scattering(const std::string& json_text) {
  const auto j = parse_json(json_text);
  if (!j.is_object()) throw FormatError("scattering data must be an object");
  ScatteringPoles p;
  p.c0 = read_number(j, "c0");
  p.c1 = read_number(j, "c1");
  for (auto [key, dest] : {std::pair{"poles0", &p.poles0}, std::pair{"poles1", &p.poles1}}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_array()) throw FormatError(std::string(key) + " must be a list");
    for (const auto& e : j[key]) dest->push_back(read_complex(e, key));
  }
  p.validate();
  return p;
}

namespace {

// sum over a of (1/(z + s a) - 1/(z + s conj a)), s = sgn Re a
MeroSum pole_pairs(const std::vector<Complex>& poles, const Scalar& weight) {
  MeroSum m;
  for (const Complex& a : poles) {
    const double sg = a.real() > 0 ? 1.0 : -1.0;
    m = m + MeroSum::pole(-sg * a, weight) + MeroSum::pole(-sg * std::conj(a), -weight);
  }
  return m;
}

}  // namespace

ScatteringTransforms scattering_lprime(const ScatteringPoles& p) {
  p.validate();
  ScatteringTransforms out;
  out.S0 = MeroSum::constant(Scalar::numeric(0.5 * p.c0)) - pole_pairs(p.poles0, Rational(1, 2));
  out.S0shifted = out.S0.shifted(-1.0) + threshold_lprime().shifted(-1.0);
  out.S1 = MeroSum::constant(Scalar::numeric(p.c1)) - pole_pairs(p.poles1, 1);
  return out;
}

}  // namespace cusped
