#include "cusped/laurent_matrix.hpp"

#include <utility>

#include "cusped/errors.hpp"

namespace cusped {

namespace {

// Euclidean division in the Laurent ring with span() as the size function.
std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return {LaurentPoly(), LaurentPoly()};
  auto [q, r] = poly_divmod(a.shifted(-a.low()), b.shifted(-b.low()));
  return {q.shifted(a.low() - b.low()), r.shifted(a.low())};
}

class SmithReducer {
 public:
  explicit SmithReducer(LaurentMatrix m) : m_(std::move(m)) {}

  std::vector<LaurentPoly> run() {
    const std::size_t n = std::min(m_.rows(), m_.cols());
    std::vector<LaurentPoly> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!reduce_at(k)) break;  // remaining block is zero
      out[k] = m_(k, k).normalized();
    }
    return out;
  }

 private:
  bool pick_pivot(std::size_t k) {
    std::size_t bi = 0, bj = 0;
    int best = -1;
    for (std::size_t i = k; i < m_.rows(); ++i)
      for (std::size_t j = k; j < m_.cols(); ++j) {
        const LaurentPoly& e = m_(i, j);
        if (e.is_zero()) continue;
        if (best < 0 || e.span() < best) {
          best = e.span();
          bi = i;
          bj = j;
        }
      }
    if (best < 0) return false;
    swap_rows(k, bi);
    swap_cols(k, bj);
    // Monic pivot keeps coefficient growth down.
    const Cyclotomic inv = m_(k, k).leading().inverse();
    for (std::size_t j = k; j < m_.cols(); ++j) m_(k, j) *= LaurentPoly(inv);
    return true;
  }

  bool reduce_at(std::size_t k) {
    if (!pick_pivot(k)) return false;
    for (;;) {
      bool clean = true;
      for (std::size_t i = k + 1; i < m_.rows(); ++i) {
        if (m_(i, k).is_zero()) continue;
        auto [q, r] = laurent_divmod(m_(i, k), m_(k, k));
        for (std::size_t j = k; j < m_.cols(); ++j) m_(i, j) -= q * m_(k, j);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < m_.cols(); ++j) {
        if (m_(k, j).is_zero()) continue;
        auto [q, r] = laurent_divmod(m_(k, j), m_(k, k));
        for (std::size_t i = k; i < m_.rows(); ++i) m_(i, j) -= q * m_(i, k);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) {
        pick_pivot(k);
        continue;
      }
      // Divisibility chain: fold an offending row into the pivot row.
      bool chain_ok = true;
      for (std::size_t i = k + 1; i < m_.rows() && chain_ok; ++i)
        for (std::size_t j = k + 1; j < m_.cols(); ++j)
          if (!divides(m_(k, k), m_(i, j))) {
            for (std::size_t jj = k; jj < m_.cols(); ++jj) m_(k, jj) += m_(i, jj);
            chain_ok = false;
            break;
          }
      if (chain_ok) return true;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m_.cols(); ++j) std::swap(m_(a, j), m_(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m_.rows(); ++i) std::swap(m_(i, a), m_(i, b));
  }

  LaurentMatrix m_;
};

}  // namespace

LaurentMatrix LaurentMatrix::identity(std::size_t n) {
  LaurentMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly(1);
  return m;
}

LaurentMatrix LaurentMatrix::diagonal(const std::vector<LaurentPoly>& d) {
  LaurentMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool LaurentMatrix::is_zero() const {
  for (const auto& e : a_)
    if (!e.is_zero()) return false;
  return true;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix shape mismatch in product");
  LaurentMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::vector<LaurentPoly> smith_form(const LaurentMatrix& m) { return SmithReducer(m).run(); }

LaurentPoly char_poly_from_divisors(const std::vector<LaurentPoly>& divisors) {
  LaurentPoly p(1);
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (divisors[i].is_zero())
      throw ComputationError("NotTorsion", "elementary divisor " + std::to_string(i + 1) +
                                               " is zero; the module is not torsion");
    p *= divisors[i];
  }
  return p.normalized();
}

}  // namespace cusped
