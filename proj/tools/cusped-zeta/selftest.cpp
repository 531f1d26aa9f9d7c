#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "cusped/alexander.hpp"
#include "cusped/cuspterms.hpp"
#include "cusped/ruelle.hpp"
#include "cusped/verdict.hpp"

namespace cusped_cli {

namespace {

const char* kTrefoil =
    "gens a b\n"
    "rel a b a B A B\n"
    "peri a\n"
    "eps 1 1\n";

const char* kFigureEight =
    "gens x y\n"
    "rel y x Y x y X Y x Y X\n"
    "peri x\n"
    "eps 1 1\n";

bool alexander_polynomials() {
  const auto t = cusped::parse_presentation(kTrefoil);
  const auto f = cusped::parse_presentation(kFigureEight);
  const auto at = cusped::alexander_invariant(t.presentation, t.rho, t.epsilon);
  const auto af = cusped::alexander_invariant(f.presentation, f.rho, f.epsilon);
  return at.char1 == cusped::LaurentPoly::from_integers(0, {1, -1, 1}) &&
         af.char1 == cusped::LaurentPoly::from_integers(0, {1, -3, 1}) && at.ordAtOne == 1 && af.ordAtOne == 1;
}

bool transform_algebra() {
  for (double lam : {0.0, 0.5, 4.0}) {
    const auto a = cusped::HeatAtom::exp(lam);
    for (double z : {0.75, 2.0}) {
      const auto c = cusped::evaluate(cusped::lprime_closed(a), z);
      const auto q = cusped::quadrature_lprime(cusped::heat_function(a), z);
      if (std::abs(c - q) > 1e-8 * std::abs(c)) return false;
    }
  }
  return true;
}

bool vanishing_combinations() {
  cusped::UnipotentCase c;
  c.covolume = 1.0;
  c.constant = 2.5;
  if (!cusped::unipotent_lprime(c).combination.is_zero()) return false;
  c.trivialRestriction = true;
  return cusped::unipotent_lprime(c).combination.is_zero();
}

bool betti_coherence() {
  for (int h0 = 0; h0 <= 1; ++h0)
    for (int h1 = 0; h1 <= 10; ++h1)
      for (bool d : {false, true}) {
        if (h0 == 1 && !d) continue;
        const auto b = cusped::l2_betti(h0, h1, d);
        if (cusped::ruelle_order_prediction(h0, h1, d) != 2 * (2 * b.beta0 - b.beta1)) return false;
      }
  return true;
}

bool fried_single_orbit() {
  const auto s = cusped::orbit_powers(1.0870701449957392, 1.7227684498700904, {1.0, 0.0}, 60);
  return std::abs(cusped::fried_residual(s, 4.0).value) <= 1e-12;
}

bool epstein_square() {
  const cusped::Lattice2D z2;
  const auto v = cusped::epstein(z2, {}, 1.0).real();
  return std::abs(v - 6.0268120396919) < 1e-10;
}

}  // namespace

bool run_selftest(std::ostream& os) {
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"alexander-polynomials", alexander_polynomials},
      {"transform-algebra", transform_algebra},
      {"vanishing-combinations", vanishing_combinations},
      {"betti-coherence", betti_coherence},
      {"fried-single-orbit", fried_single_orbit},
      {"epstein-square-lattice", epstein_square},
  };
  bool all = true;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      os << "error in " << name << ": " << e.what() << "\n";
    }
    os << (ok ? "ok      " : "FAILED  ") << name << "\n";
    all = all && ok;
  }
  return all;
}

}  // namespace cusped_cli
