#include "cusped/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cusped/errors.hpp"

namespace cusped {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}
}  // namespace

Complex digamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw ComputationError("PoleEvaluation", "digamma pole at " + std::to_string(z.real()));
  Complex acc{0.0};
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // B_{2k} / (2k)
  static constexpr std::array<double, 8> c = {1.0 / 12,       -1.0 / 120,     1.0 / 252,
                                              -1.0 / 240,     1.0 / 132,      -691.0 / 32760,
                                              1.0 / 12,       -3617.0 / 8160};
  const Complex w = 1.0 / (z * z);
  Complex series{0.0};
  Complex p = w;
  for (double ck : c) {
    series += ck * p;
    p *= w;
  }
  return acc + std::log(z) - 0.5 / z - series;
}

double euler_gamma() {
  static const double g = -digamma(Complex(1.0)).real();
  return g;
}

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw ComputationError("PoleEvaluation", "gamma pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> coef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  Complex x = coef[0];
  for (std::size_t i = 1; i < coef.size(); ++i) x += coef[i] / (z + static_cast<double>(i));
  const Complex t = z + g + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex complex_gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex upper_gamma(Complex a, double x) {
  if (!(x > 0)) throw ValidationError("upper_gamma needs x > 0");
  if (x >= 1.0 + 0.5 * std::abs(a)) {
    // Continued fraction (modified Lentz), converging quickly for large x.
    constexpr double tiny = 1e-300;
    Complex b = x + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i < 500; ++i) {
      const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - a);
      b += 2.0;
      d = an * d + b;
      if (std::abs(d) < tiny) d = tiny;
      c = b + an / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1.0 / d;
      const Complex delta = d * c;
      h *= delta;
      if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(a * std::log(x) - x) * h;
  }
  // Direct integral of t^{a-1} e^{-t} over [x, inf), with t = x + u.
  using boost::math::quadrature::gauss_kronrod;
  auto part = [&](bool imag) {
    auto f = [&](double u) {
      const double t = x + u;
      const Complex v = std::exp((a - 1.0) * std::log(t) - t);
      return imag ? v.imag() : v.real();
    };
    return gauss_kronrod<double, 61>::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
  };
  return {part(false), part(true)};
}

}  // namespace cusped
