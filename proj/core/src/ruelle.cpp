#include "cusped/ruelle.hpp"

#include <cmath>
#include <numbers>

#include "cusped/errors.hpp"
#include "cusped/parallel.hpp"

namespace cusped {

HyperbolicWeights weights(const GeodesicClass& c) {
  const double q = std::exp(-c.length);
  HyperbolicWeights w;
  w.delta = 1.0 - 2.0 * q * std::cos(c.holonomy) + q * q;
  w.a0 = c.charValue * c.primitiveLength / w.delta;
  w.a1 = 2.0 * std::cos(c.holonomy) * w.a0;
  return w;
}

double counting_constant(const Spectrum& s, bool primitiveOnly) {
  double best = 0.0;
  int n = 0;
  for (const auto& c : s.classes) {
    if (primitiveOnly && c.multiplicity != 1) continue;
    ++n;
    best = std::max(best, n * std::exp(-2.0 * c.length));
  }
  return best;
}

namespace {

void require_region(const Spectrum& s, Complex z, double shift) {
  if (s.complete || s.classes.empty()) return;
  if (!(z.real() + shift > 2.0))
    throw ValidationError("Re z = " + format_double(z.real() + shift) + " is outside the region Re z > 2",
                          "ConvergenceRegionError");
}

// sum_{x > L} x^p e^{-sigma x} dN(x) with N(x) <= C e^{2x}, p in {0, 1}.
double counting_tail(double C, double L, double sigma, int p) {
  if (C == 0.0 || std::isinf(L)) return 0.0;
  if (sigma <= 2.0) return std::numeric_limits<double>::infinity();
  const double g = sigma - 2.0;
  const double e = std::exp(-g * L);
  if (p == 0) return sigma * C * e / g;
  const double Lm = std::max(L, 1.0 / sigma);
  return C * sigma * std::exp(-g * Lm) * (Lm / g + 1.0 / (g * g));
}

// Omitted powers k > K of a primitive class: sum |a_j| e^{-sigma k l} / l^p.
double power_tail(const GeodesicClass& prim, double L, double sigma, bool divideByLength) {
  if (std::isinf(L)) return 0.0;
  const double l0 = prim.primitiveLength;
  const int K = static_cast<int>(std::floor(L / l0 + 1e-9));
  const double first = (K + 1) * l0;
  const double ratio = std::exp(-sigma * l0);
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  const double dmin = std::pow(1.0 - std::exp(-first), 2);
  double b = 2.0 * l0 / dmin * std::exp(-sigma * first) / (1.0 - ratio);
  if (divideByLength) b /= first;
  return b;
}

double power_tails(const Spectrum& s, double sigma, bool divideByLength) {
  std::vector<double> parts;
  for (const auto& c : s.classes)
    if (c.multiplicity == 1) parts.push_back(power_tail(c, s.cutoffLength, sigma, divideByLength));
  return pairwise_sum(parts);
}

}  // namespace

TruncationReport log_euler_product(const Spectrum& s, Complex z) {
  require_region(s, z, 0.0);
  std::vector<Complex> terms;
  for (const auto& c : s.classes)
    if (c.multiplicity == 1) terms.push_back(std::log(1.0 - c.charValue * std::exp(-z * c.length)));
  TruncationReport r;
  r.value = pairwise_sum(terms);
  r.termsUsed = static_cast<int>(terms.size());
  // |log(1 - w)| <= 2|w| for |w| <= 1/2.
  r.tailBound = s.complete ? 0.0 : 2.0 * counting_tail(counting_constant(s, true), s.cutoffLength, z.real(), 0);
  return r;
}

TruncationReport euler_product(const Spectrum& s, Complex z) {
  TruncationReport r = log_euler_product(s, z);
  r.value = std::exp(r.value);
  r.tailBound = std::abs(r.value) * std::expm1(r.tailBound);
  return r;
}

TruncationReport y_series(const Spectrum& s, int j, Complex z) {
  require_region(s, z, 0.0);
  std::vector<Complex> terms;
  for (const auto& c : s.classes) {
    const HyperbolicWeights w = weights(c);
    terms.push_back((j == 0 ? w.a0 : w.a1) * std::exp(-z * c.length));
  }
  TruncationReport r;
  r.value = pairwise_sum(terms);
  r.termsUsed = static_cast<int>(terms.size());
  r.tailBound = power_tails(s, z.real(), false);
  if (!s.complete) {
    const double L = s.cutoffLength;
    const double dmin = std::pow(1.0 - std::exp(-L), 2);
    r.tailBound += 2.0 / dmin * counting_tail(counting_constant(s, false), L, z.real(), 1);
  }
  return r;
}

TruncationReport log_s_series(const Spectrum& s, int j, Complex z) {
  require_region(s, z, 0.0);
  std::vector<Complex> terms;
  for (const auto& c : s.classes) {
    const HyperbolicWeights w = weights(c);
    terms.push_back(-(j == 0 ? w.a0 : w.a1) * std::exp(-z * c.length) / c.length);
  }
  TruncationReport r;
  r.value = pairwise_sum(terms);
  r.termsUsed = static_cast<int>(terms.size());
  r.tailBound = power_tails(s, z.real(), true);
  if (!s.complete) {
    const double L = s.cutoffLength;
    const double dmin = std::pow(1.0 - std::exp(-L), 2);
    r.tailBound += 2.0 / dmin * counting_tail(counting_constant(s, false), L, z.real(), 0);
  }
  return r;
}

TruncationReport fried_residual(const Spectrum& s, Complex z) {
  require_region(s, z, 0.0);
  const Complex lhs = log_euler_product(s, z).value;
  const Complex rhs = log_s_series(s, 0, z).value + log_s_series(s, 0, z + 2.0).value -
                      log_s_series(s, 1, z + 1.0).value;
  TruncationReport r;
  r.value = std::abs(lhs - rhs);
  r.termsUsed = static_cast<int>(s.classes.size());
  r.tailBound =
      power_tails(s, z.real(), true) + power_tails(s, z.real() + 2.0, true) + power_tails(s, z.real() + 1.0, true);
  return r;
}

Complex log_derivative_numeric(const Spectrum& s, Complex z, double h) {
  auto D = [&](double step) {
    return (log_euler_product(s, z + step).value - log_euler_product(s, z - step).value) / (2.0 * step);
  };
  return (4.0 * D(h / 2.0) - D(h)) / 3.0;
}

TruncationReport log_derivative_series(const Spectrum& s, Complex z) {
  const TruncationReport a = y_series(s, 0, z);
  const TruncationReport b = y_series(s, 1, z + 1.0);
  const TruncationReport c = y_series(s, 0, z + 2.0);
  return {a.value - b.value + c.value, a.tailBound + b.tailBound + c.tailBound, a.termsUsed};
}

Complex hyperbolic_heat(const Spectrum& s, int j, double t) {
  if (!(t > 0)) throw ValidationError("heat time must be positive");
  std::vector<Complex> terms;
  const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
  for (const auto& c : s.classes) {
    const HyperbolicWeights w = weights(c);
    const double l = c.length;
    const double e = j == 0 ? std::exp(-(l * l / (4.0 * t) + t + l)) : std::exp(-(l * l / (4.0 * t) + l));
    terms.push_back((j == 0 ? w.a0 : w.a1) * norm * e);
  }
  return pairwise_sum(terms);
}

}  // namespace cusped
