#include "cusped/alexander.hpp"

#include "cusped/errors.hpp"

namespace cusped {

TwistedComplex build_complex(const GroupPresentation& p, const UnitCharacter& rho, const Epsilon& eps) {
  const std::size_t g = p.arity();
  TwistedComplex c{LaurentMatrix(p.relators.size(), g), LaurentMatrix(g, 1)};
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (std::size_t j = 0; j < g; ++j)
      c.d1(r, j) = evaluate_twisted(fox_derivative(p.relators[r], static_cast<int>(j)), rho, eps);
  for (std::size_t j = 0; j < g; ++j) {
    const GroupWord x = GroupWord::generator(static_cast<int>(j));
    c.d0(j, 0) = LaurentPoly::monomial(rho.value(x), static_cast<int>(eps(x))) - LaurentPoly(1);
  }
  if (p.relators.size() > 0 && !(c.d1 * c.d0).is_zero())
    throw ComputationError("ComplexConditionViolation", "d1 * d0 is not zero");
  return c;
}

int cyclotomic_rank(std::vector<std::vector<Cyclotomic>> m) {
  int rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const Cyclotomic inv = m[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const Cyclotomic f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

namespace {

int rank_at_one(const LaurentMatrix& m) {
  std::vector<std::vector<Cyclotomic>> rows(m.rows(), std::vector<Cyclotomic>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).at_one();
  return cyclotomic_rank(std::move(rows));
}

}  // namespace

Betti twisted_betti(const GroupPresentation& p, const UnitCharacter& rho) {
  // At t = 1 the epsilon twist disappears, so any epsilon will do.
  Epsilon zero{std::vector<long long>(p.arity(), 0)};
  const TwistedComplex c = build_complex(p, rho, zero);
  const int r0 = rank_at_one(c.d0);
  const int r1 = rank_at_one(c.d1);
  return {1 - r0, static_cast<int>(p.arity()) - r0 - r1};
}

void finish_alexander_data(AlexanderData& a) {
  a.ordAtOne = ord_at_one(a.char0) + ord_at_one(a.char2) - ord_at_one(a.char1);
  a.semisimpleAtOne = true;
  for (const auto& d : a.h1Divisors)
    if (ord_at_one(d) > 1) a.semisimpleAtOne = false;
  a.h0InfinityVanishes = ord_at_one(a.char0) == 0;
}

AlexanderData alexander_invariant(const GroupPresentation& p, const UnitCharacter& rho, const Epsilon& eps) {
  const TwistedComplex c = build_complex(p, rho, eps);
  const std::size_t g = p.arity();
  AlexanderData a;

  LaurentPoly g0;
  for (std::size_t j = 0; j < g; ++j) g0 = gcd(g0, c.d0(j, 0));
  if (g0.is_zero()) throw ComputationError("NotTorsion", "H0 is not a torsion module");
  a.char0 = g0.normalized();

  const std::vector<LaurentPoly> divisors = smith_form(c.d1);
  std::size_t rank = 0;
  a.char1 = LaurentPoly(1);
  for (const auto& d : divisors) {
    if (d.is_zero()) continue;
    ++rank;
    if (!d.is_unit()) {
      a.h1Divisors.push_back(d);
      a.char1 *= d;
    }
  }
  a.char1 = a.char1.normalized();
  if (rank + 1 != g)
    throw ComputationError("NotTorsion", "H1 is not a torsion module (Fox matrix rank " + std::to_string(rank) +
                                             ", expected " + std::to_string(g - 1) + ")");
  if (rank != p.relators.size())
    throw ComputationError("NotTorsion", "H2 is not a torsion module (" +
                                             std::to_string(p.relators.size() - rank) + " free summands)");
  a.char2 = LaurentPoly(1);

  const Betti b = twisted_betti(p, rho);
  a.h0 = b.h0;
  a.h1 = b.h1;
  finish_alexander_data(a);
  return a;
}

OrderInequality order_inequality_check(const AlexanderData& a) {
  if (!a.h0InfinityVanishes)
    throw ValidationError("H0 of the infinite cyclic cover with rho coefficients does not vanish",
                          "HypothesisNotMet");
  OrderInequality r;
  r.inequalityHolds = a.ordAtOne <= -a.h1;
  r.equalityExpected = a.semisimpleAtOne;
  r.equalityHolds = a.ordAtOne == -a.h1;
  return r;
}

}  // namespace cusped
