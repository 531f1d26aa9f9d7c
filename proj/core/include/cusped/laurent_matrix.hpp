#pragma once

#include <cstddef>
#include <vector>

#include "cusped/laurent.hpp"

namespace cusped {

/// Dense row-major matrix over the Laurent ring.
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static LaurentMatrix identity(std::size_t n);
  static LaurentMatrix diagonal(const std::vector<LaurentPoly>& d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  LaurentPoly& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const LaurentPoly& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const;
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LaurentPoly> a_;
};

/// Elementary divisors d_1 | d_2 | ... of m over Q(zeta_n)[t, t^-1].
///
/// Returns min(rows, cols) entries, each normalized (monic, lowest
/// exponent 0). Zero entries mark a rank deficiency.
std::vector<LaurentPoly> smith_form(const LaurentMatrix& m);

/// Product of the divisors, normalized. Throws
/// ComputationError("NotTorsion") when any divisor is zero.
LaurentPoly char_poly_from_divisors(const std::vector<LaurentPoly>& divisors);

}  // namespace cusped
