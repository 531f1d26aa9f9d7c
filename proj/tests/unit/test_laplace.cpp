#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cusped/errors.hpp"
#include "cusped/laplace.hpp"

using namespace cusped;
using std::numbers::pi;

namespace {

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const Complex kGrid[] = {{0.75, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {0.75, 0.5}, {1.0, 0.5},
                         {2.0, 0.5},  {3.0, 0.5}, {0.75, -0.5}, {1.0, -0.5}, {2.0, -0.5}, {3.0, -0.5}};

std::vector<Rational> random_eigen(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 6), zero(0, 2), num(1, 40), den(1, 6);
  std::vector<Rational> v;
  const int zeros = zero(rng);
  for (int i = 0; i < zeros; ++i) v.emplace_back(0);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) v.emplace_back(num(rng), den(rng));
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

int zeros(const std::vector<Rational>& v) { return static_cast<int>(std::count(v.begin(), v.end(), Rational(0))); }

}  // namespace

TEST_CASE("closed forms against quadrature") {
  std::vector<HeatAtom> atoms;
  for (double l : {0.0, 0.5, 1.0, 4.0}) atoms.push_back(HeatAtom::exp(l));
  for (double nu : {-0.5, 0.0, 0.5, 1.0}) atoms.push_back(HeatAtom::power(nu));
  for (double l : {0.5, 1.0, 2.0}) atoms.push_back(HeatAtom::theta(l));
  for (const auto& a : atoms) {
    const MeroSum m = lprime_closed(a);
    const auto f = heat_function(a);
    for (Complex z : kGrid) {
      INFO("param " << a.param << " z " << z);
      CHECK(rel_err(quadrature_lprime(f, z), evaluate(m, z)) <= 1e-8);
    }
  }
}

TEST_CASE("digamma kernels against quadrature") {
  for (double alpha : {0.5, 1.0}) {
    const HeatAtom a = HeatAtom::digamma_kernel(alpha);
    for (Complex z : {Complex(1.0), Complex(2.0, 0.5)}) {
      INFO("alpha " << alpha << " z " << z);
      CHECK(rel_err(quadrature_lprime(heat_function(a), z), evaluate(lprime_closed(a), z)) <= 1e-8);
    }
  }
}

TEST_CASE("closed form examples") {
  const MeroSum p0 = lprime_closed(HeatAtom::power(0.0));
  CHECK(p0.polyPart.empty());
  REQUIRE(p0.poles.size() == 1);
  CHECK(p0.poles[0].at == Complex(0.0));
  CHECK(p0.poles[0].coef == Scalar(2));
  const MeroSum e1 = lprime_closed(HeatAtom::exp(1.0));
  REQUIRE(e1.poles.size() == 2);
  CHECK(e1.poles[0].coef == Scalar(1));
  CHECK(e1.poles[1].coef == Scalar(1));
  CHECK(std::abs(evaluate(e1, 1.0) - 1.0) < 1e-15);
  CHECK(std::abs(evaluate(lprime_closed(HeatAtom::theta(1.0)), 1.0) - std::exp(-1.0)) < 1e-15);
  const MeroSum e0 = lprime_closed(HeatAtom::exp(0.0));
  REQUIRE(e0.poles.size() == 1);
  CHECK(e0.poles[0].coef == Scalar(2));
  const MeroSum p1 = lprime_closed(HeatAtom::power(1.0));
  REQUIRE(p1.poles.size() == 1);
  CHECK(p1.poles[0].order == 3);
  const MeroSum ph = lprime_closed(HeatAtom::power(-0.5));
  CHECK(ph.poles.empty());
  REQUIRE(ph.polyPart.size() == 1);
  CHECK(std::abs(ph.polyPart[0].value() - 2.0 * std::sqrt(pi)) < 1e-14);
  CHECK_THROWS_AS(lprime_closed(HeatAtom::power(-1.0)), ValidationError);
  CHECK_THROWS_AS(lprime_closed(HeatAtom::power(0.3)), ValidationError);
  CHECK_THROWS_AS(lprime_closed(HeatAtom::exp(-1.0)), ValidationError);
}

TEST_CASE("quadrature examples") {
  CHECK(std::abs(quadrature_lprime([](double) { return Complex(1.0); }, 2.0) - 1.0) < 1e-10);
  CHECK(std::abs(quadrature_lprime([](double t) { return Complex(std::exp(-t)); }, 1.0) - 1.0) < 1e-10);
  CHECK(std::abs(quadrature_lprime([](double t) { return Complex(1.0 / std::sqrt(t)); }, 3.0) - 2.0 * std::sqrt(pi)) <
        1e-10);
}

TEST_CASE("finite part of a t^{-3/2} singularity") {
  QuadratureOptions o;
  o.singularPower = -1.5;
  o.singularCoeff = 1.0;
  const auto none = [](double) { return Complex(0.0); };
  const auto rest = [](double t) { return Complex(std::expm1(-t) * std::pow(t, -1.5)); };
  const MeroSum p = lprime_closed(HeatAtom::power(-1.5));
  for (Complex z : {Complex(1.0), Complex(2.0, 0.5)}) {
    CHECK(rel_err(quadrature_lprime(none, z, o), evaluate(p, z)) < 1e-9);
    const Complex exact = 2.0 * z * (-2.0 * std::sqrt(pi)) * std::sqrt(z * z + 1.0);
    CHECK(rel_err(quadrature_lprime(rest, z, o), exact) < 1e-9);
  }
}

TEST_CASE("digamma values") {
  CHECK(digamma(Complex(1.0)).real() == doctest::Approx(-0.5772156649015329).epsilon(1e-14));
  CHECK(std::abs(digamma(Complex(2.0)) - (1.0 - euler_gamma())) < 1e-14);
  CHECK(euler_gamma() == doctest::Approx(0.5772156649015329).epsilon(1e-15));
  const Complex w(0.3, 1.7);
  CHECK(std::abs(digamma(w + 1.0) - digamma(w) - 1.0 / w) < 1e-13);
  CHECK(std::abs(digamma(Complex(0.5)) - (-euler_gamma() - 2.0 * std::log(2.0))) < 1e-14);
}

TEST_CASE("evaluation at poles") {
  CHECK_THROWS_AS(evaluate(lprime_closed(HeatAtom::power(0.0)), 0.0), ComputationError);
  CHECK_THROWS_AS(evaluate(MeroSum::digamma(1, 1.0), -1.0), ComputationError);
}

TEST_CASE("residues") {
  CHECK(residue_at(lprime_closed(HeatAtom::power(0.0)), 0.0) == Scalar(2));
  CHECK(residue_at(MeroSum::digamma(-2, 1.0), -1.0) == Scalar(2));
  CHECK(residue_at(MeroSum::digamma(-2, 1.0), 0.5) == Scalar(0));
  const MeroSum c = MeroSum::pole(0.0, 1) + MeroSum::pole(0.0, -1);
  CHECK(c.is_zero());
  CHECK(residue_at(c, 0.0) == Scalar(0));
  CHECK(residue_at(MeroSum::digamma(3, 0.0) + MeroSum::pole(0.0, 3), 0.0) == Scalar(0));
}

TEST_CASE("MeroSum algebra") {
  const MeroSum a = lprime_closed(HeatAtom::exp(4.0));
  CHECK((a - a).is_zero());
  CHECK(a.reflected() == -a);
  CHECK(a.shifted(1.0).shifted(-1.0) == a);
  const Complex z(0.7, 0.2);
  CHECK(std::abs(evaluate(a.shifted(1.0), z) - evaluate(a, z + 1.0)) < 1e-15);
  CHECK(std::abs(evaluate(Scalar(3) * a, z) - 3.0 * evaluate(a, z)) < 1e-14);
  CHECK_THROWS_AS(MeroSum::digamma(1, 0.0).reflected(), ValidationError);
  CHECK(to_json(MeroSum()) == R"({"polyPart":[],"poles":[],"digammaAtoms":[],"digammaConstants":[],"expAtoms":[]})");
}

TEST_CASE("spectral transforms: examples") {
  const auto a = spectral_lprime(std::vector<Rational>{0}, std::vector<Rational>{0, 0});
  CHECK(residue_at(a.L1, 0.0) == Scalar(2));
  CHECK(residue_at(a.L0, 0.0) == Scalar(1));
  CHECK(residue_at(a.L0, 2.0) == Scalar(1));
  const auto e = spectral_lprime(std::vector<Rational>{}, std::vector<Rational>{});
  CHECK(e.L0.is_zero());
  CHECK(e.L1.is_zero());
}

TEST_CASE("spectral transforms: random eigenvalue lists") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e0 = random_eigen(rng), e1 = random_eigen(rng);
    const auto s = spectral_lprime(e0, e1);
    CHECK(s.L1.reflected() == -s.L1);
    const Scalar r = residue_at(s.L1, 0.0);
    CHECK(r.is_exact());
    CHECK(r == Scalar(2 * (zeros(e1) - zeros(e0))));
    for (int k = 0; k < 3; ++k) {
      const Complex z(u(rng), u(rng));
      const Complex lhs = evaluate(s.L0, 1.0 + z), rhs = -evaluate(s.L0, 1.0 - z);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
      CHECK(std::abs(evaluate(s.L1, -z) + evaluate(s.L1, z)) <= 1e-12 * std::max(1.0, std::abs(evaluate(s.L1, z))));
    }
  }
}

TEST_CASE("contour kernel") {
  CHECK(std::abs(contour_kernel(2.0, Complex(0, 1)) - Complex(0, pi / 6)) < 1e-15);
  CHECK(std::abs(contour_kernel(2.0, Complex(0, -1)) - Complex(0, -pi / 6)) < 1e-15);
  CHECK_THROWS_AS(contour_kernel(2.0, 1.0), ValidationError);
  using boost::math::quadrature::gauss_kronrod;
  for (Complex alpha : {Complex(0, 1), Complex(0, -1), Complex(0.7, 0.3), Complex(-1.2, -2.0)}) {
    for (double z : {0.5, 2.0}) {
      auto part = [&](bool im) {
        auto f = [&](double x) {
          const Complex v = 1.0 / ((x * x + z * z) * (x - alpha));
          return im ? v.imag() : v.real();
        };
        return gauss_kronrod<double, 31>::integrate(f, -INFINITY, INFINITY, 25, 1e-14);
      };
      const Complex direct(part(false), part(true));
      CHECK(std::abs(contour_kernel(z, alpha) - direct) < 1e-9);
      CHECK(std::abs(contour_integral_numeric(z, alpha) - direct) < 1e-9);
    }
  }
}
