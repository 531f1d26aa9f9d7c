#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cusped/cyclotomic.hpp"

namespace cusped {

/// Element of Q(zeta_n)[t, t^-1].
///
/// Stored as t^low * (c_0 + c_1 t + ... ). Leading and trailing
/// coefficients are nonzero unless the polynomial is zero, in which case
/// the coefficient list is empty and low() is 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Cyclotomic constant);  // NOLINT(implicit)
  LaurentPoly(long long constant) : LaurentPoly(Cyclotomic(constant)) {}  // NOLINT

  static LaurentPoly monomial(Cyclotomic c, int exponent);
  static LaurentPoly from_coefficients(int low, std::vector<Cyclotomic> coeffs);
  /// Integer coefficients, lowest exponent first.
  static LaurentPoly from_integers(int low, const std::vector<long long>& coeffs);

  bool is_zero() const noexcept { return c_.empty(); }
  /// Nonzero monomial, i.e. a unit of the Laurent ring.
  bool is_unit() const noexcept { return c_.size() == 1; }
  int low() const noexcept { return low_; }
  int high() const noexcept { return low_ + static_cast<int>(c_.size()) - 1; }
  /// high() - low(); the degree of the associated ordinary polynomial.
  int span() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Cyclotomic>& coefficients() const noexcept { return c_; }
  Cyclotomic coeff(int exponent) const;
  const Cyclotomic& leading() const { return c_.back(); }

  /// Unit-normalized representative: lowest exponent 0, leading coefficient 1.
  LaurentPoly normalized() const;
  LaurentPoly shifted(int k) const;  // multiply by t^k

  Cyclotomic evaluate(const Cyclotomic& t) const;
  std::complex<double> evaluate(std::complex<double> t) const;
  Cyclotomic at_one() const;

  /// Canonical text `(c_k)*t^k + ...`, highest exponent first; "0" for zero.
  std::string to_string() const;
  static LaurentPoly parse(std::string_view text);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  void trim();

  int low_ = 0;
  std::vector<Cyclotomic> c_;
};

/// The polynomial t - 1.
LaurentPoly t_minus_one();

/// Division with remainder of ordinary polynomials (both arguments must
/// have low() >= 0); deg(remainder) < deg(divisor).
std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b);

/// Quotient a / b in the Laurent ring; throws ComputationError("NotDivisible")
/// when b does not divide a.
LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b);
bool divides(const LaurentPoly& b, const LaurentPoly& a);

/// Normalized greatest common divisor; gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Largest k with (t-1)^k | f. Throws ComputationError("ZeroPolynomial").
int ord_at_one(const LaurentPoly& f);

}  // namespace cusped
