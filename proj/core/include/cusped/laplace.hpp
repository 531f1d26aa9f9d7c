#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cusped/special.hpp"

namespace cusped {

using Rational = boost::multiprecision::cpp_rational;

/// Coefficient that stays an exact rational as long as every input is one.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long q) : q_(q) {}  // NOLINT(implicit)
  Scalar(Rational q) : q_(std::move(q)) {}  // NOLINT(implicit)
  static Scalar numeric(Complex v);

  bool is_exact() const noexcept { return exact_; }
  const Rational& rational() const noexcept { return q_; }
  Complex value() const;
  bool is_zero() const;
  std::string exact_string() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  bool exact_ = true;
  Rational q_ = 0;
  Complex v_{};
};

/// coef / (z - at)^order
struct Pole {
  Complex at;
  int order = 1;
  Scalar coef;
};

/// coef * psi(z + shift)
struct DigammaAtom {
  Scalar coef;
  Complex shift;
};

/// coef * psi(arg), a constant
struct DigammaConstant {
  Scalar coef;
  Complex arg;
};

/// coef * exp(-rate z)
struct ExpAtom {
  Scalar coef;
  double rate = 0.0;
};

/// Symbolic meromorphic function of z. Operations keep it normalized:
/// like terms merged, zero terms dropped, terms in a fixed order.
struct MeroSum {
  std::vector<Scalar> polyPart;  // coefficient of z^k at index k
  std::vector<Pole> poles;
  std::vector<DigammaAtom> digammaAtoms;
  std::vector<DigammaConstant> digammaConstants;
  std::vector<ExpAtom> expAtoms;

  static MeroSum constant(Scalar c);
  static MeroSum pole(Complex at, Scalar coef, int order = 1);
  static MeroSum digamma(Scalar coef, Complex shift);
  static MeroSum digamma_constant(Scalar coef, Complex arg);

  MeroSum& normalize();
  bool is_zero() const;

  /// z -> f(z + a)
  MeroSum shifted(Complex a) const;
  /// z -> f(-z); throws UnsupportedAtom when digamma or exp atoms are present.
  MeroSum reflected() const;

  MeroSum operator-() const;
  friend MeroSum operator+(const MeroSum& a, const MeroSum& b);
  friend MeroSum operator-(const MeroSum& a, const MeroSum& b) { return a + (-b); }
  friend MeroSum operator*(const Scalar& c, const MeroSum& m);
  friend bool operator==(const MeroSum& a, const MeroSum& b);
};

/// Throws ComputationError("PoleEvaluation") at a stored pole or a digamma
/// singularity.
Complex evaluate(const MeroSum& m, Complex z);

/// Stored simple-pole coefficient at z0 plus -c for each digamma atom
/// singular at z0.
Scalar residue_at(const MeroSum& m, Complex z0);

/// JSON object with keys polyPart, poles, digammaAtoms, digammaConstants,
/// expAtoms in that order.
std::string to_json(const MeroSum& m, int indent = -1);

struct HeatAtom {
  enum class Kind { Exp, Power, Theta, DigammaKernel };
  Kind kind = Kind::Exp;
  double param = 0.0;  // lambda, nu, l or alpha
  Scalar coefficient = 1;

  static HeatAtom exp(double lambda) { return {Kind::Exp, lambda, 1}; }
  static HeatAtom power(double nu) { return {Kind::Power, nu, 1}; }
  static HeatAtom theta(double l) { return {Kind::Theta, l, 1}; }
  static HeatAtom digamma_kernel(double alpha) { return {Kind::DigammaKernel, alpha, 1}; }
};

/// Closed-form L' transform. Throws ValidationError("UnsupportedAtom").
MeroSum lprime_closed(const HeatAtom& atom);

/// The heat function whose transform lprime_closed computes.
std::function<Complex(double)> heat_function(const HeatAtom& atom);

struct QuadratureOptions {
  double tolerance = 1e-10;
  /// When set, the heat function is f(t) + coef * t^power with
  /// -2 < power < -1, and the power term is taken as a Hadamard finite
  /// part near t = 0. The callable passed in is the remainder f.
  double singularPower = 0.0;
  Complex singularCoeff{0.0};
};

/// 2z * integral_0^inf e^{-t z^2} f(t) dt: tanh-sinh in t = u^4 on [0, 1],
/// Gauss-Kronrod on [1, inf). Throws ComputationError("QuadratureFailure").
Complex quadrature_lprime(const std::function<Complex(double)>& f, Complex z, const QuadratureOptions& opt = {});

struct SpectralTransforms {
  MeroSum L0;
  MeroSum L1;
};

/// L1 from e^{-t alpha} over eigen1 minus eigen0; L0 is the transform of
/// e^t times the eigen0 heat trace, evaluated at z - 1.
SpectralTransforms spectral_lprime(const std::vector<Rational>& eigen0, const std::vector<Rational>& eigen1);
SpectralTransforms spectral_lprime(const std::vector<double>& eigen0, const std::vector<double>& eigen1);

/// pi i / (z (z - sgn(Im alpha) i alpha)). Throws ValidationError("RealAlpha").
Complex contour_kernel(double z, Complex alpha);
/// Direct numerical value of integral over R of 1 / ((x^2 + z^2)(x - alpha)).
Complex contour_integral_numeric(double z, Complex alpha);

}  // namespace cusped
