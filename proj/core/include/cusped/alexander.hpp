#pragma once

#include <vector>

#include "cusped/laurent_matrix.hpp"
#include "cusped/presentation.hpp"

namespace cusped {

/// Twisted chain complex of the presentation 2-complex over the Laurent
/// ring: C2 -> C1 -> C0 with d1 the relators x generators Fox matrix and
/// d0 the generators x 1 column rho(x_j) t^{eps(x_j)} - 1.
struct TwistedComplex {
  LaurentMatrix d1;
  LaurentMatrix d0;
};

struct AlexanderData {
  LaurentPoly char0;
  LaurentPoly char1;
  LaurentPoly char2;
  int ordAtOne = 0;
  int h0 = 0;
  int h1 = 0;
  bool semisimpleAtOne = true;
  bool h0InfinityVanishes = true;
  std::vector<LaurentPoly> h1Divisors;  // nonunit elementary divisors
};

struct OrderInequality {
  bool inequalityHolds = false;
  bool equalityExpected = false;
  bool equalityHolds = false;
};

/// Throws ComputationError("ComplexConditionViolation") when d1 d0 != 0.
TwistedComplex build_complex(const GroupPresentation& p, const UnitCharacter& rho, const Epsilon& eps);

/// Characteristic polynomials of the deck action on H0, H1, H2 and the
/// derived data. Throws ComputationError("NotTorsion") naming the group.
AlexanderData alexander_invariant(const GroupPresentation& p, const UnitCharacter& rho, const Epsilon& eps);

/// Fill ordAtOne, semisimpleAtOne and h0InfinityVanishes from the
/// characteristic polynomials and H1 divisors already in `a`.
void finish_alexander_data(AlexanderData& a);

struct Betti {
  int h0 = 0;
  int h1 = 0;
};

/// Dimensions of H^0 and H^1 of the base with coefficients twisted by rho.
Betti twisted_betti(const GroupPresentation& p, const UnitCharacter& rho);

/// ordAtOne <= -h1, with equality expected when semisimple at t = 1.
/// Throws ValidationError("HypothesisNotMet") when H^0(X_inf, rho) != 0.
OrderInequality order_inequality_check(const AlexanderData& a);

/// Rank of a matrix over Q(zeta_n) given row-major.
int cyclotomic_rank(std::vector<std::vector<Cyclotomic>> rows);

}  // namespace cusped
