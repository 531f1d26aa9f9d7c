#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cusped {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

int euler_phi(int n);

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree
/// first. The result is cached; the reference stays valid for the process.
const std::vector<BigInt>& cyclotomic_polynomial(int n);

/// Exact element of Q(zeta_n), stored in the power basis
/// 1, zeta, ..., zeta^{phi(n)-1} and always reduced modulo Phi_n.
///
/// Binary operations on elements of different fields first lift both
/// operands to Q(zeta_lcm). Q itself is modulus 1.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(Rational(0), 1) {}
  Cyclotomic(Rational q, int modulus = 1);  // NOLINT(implicit)
  Cyclotomic(long long q, int modulus = 1) : Cyclotomic(Rational(q), modulus) {}  // NOLINT

  /// zeta_n^k for any integer k.
  static Cyclotomic root_of_unity(int n, long long k);
  static Cyclotomic from_coefficients(int n, std::vector<Rational> coeffs);

  int modulus() const noexcept { return n_; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  /// Same number viewed in Q(zeta_m); m must be a multiple of modulus().
  Cyclotomic lifted(int m) const;
  /// Complex conjugate (zeta -> zeta^{-1}).
  Cyclotomic conj() const;
  /// Throws ComputationError("DivisionByZero") on zero.
  Cyclotomic inverse() const;

  std::complex<double> to_complex() const;

  /// Canonical text form `[q0,q1,...]@n`.
  std::string to_string() const;
  static Cyclotomic parse(std::string_view text);

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  int n_;
  std::vector<Rational> c_;
};

int common_modulus(int a, int b);

}  // namespace cusped
