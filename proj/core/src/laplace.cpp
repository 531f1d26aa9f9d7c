#include "cusped/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <json.hpp>

#include "cusped/errors.hpp"

namespace cusped {

namespace {
constexpr double kPi = std::numbers::pi;

bool same_point(Complex a, Complex b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

// Exact when a is an integer, so integer shifts keep rational coefficients.
Scalar shift_scalar(Complex a) {
  if (a.imag() == 0.0 && a.real() == std::round(a.real()) && std::abs(a.real()) < 1e15)
    return Scalar(static_cast<long long>(a.real()));
  return Scalar::numeric(a);
}

bool point_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}
}  // namespace

// ------------------------------------------------------------ Scalar

Scalar Scalar::numeric(Complex v) {
  Scalar s;
  s.exact_ = false;
  s.v_ = v;
  return s;
}

Complex Scalar::value() const { return exact_ ? Complex(static_cast<double>(q_)) : v_; }

bool Scalar::is_zero() const { return exact_ ? q_ == 0 : v_ == Complex(0.0); }

std::string Scalar::exact_string() const { return exact_ ? q_.str() : std::string(); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (exact_) s.q_ = -q_;
  else s.v_ = -v_;
  return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return Scalar(a.q_ + b.q_);
  return Scalar::numeric(a.value() + b.value());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return Scalar(a.q_ * b.q_);
  return Scalar::numeric(a.value() * b.value());
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  return a.value() == b.value();
}

// ----------------------------------------------------------- MeroSum

MeroSum MeroSum::constant(Scalar c) {
  MeroSum m;
  m.polyPart.push_back(std::move(c));
  return m.normalize();
}

MeroSum MeroSum::pole(Complex at, Scalar coef, int order) {
  MeroSum m;
  m.poles.push_back({at, order, std::move(coef)});
  return m.normalize();
}

MeroSum MeroSum::digamma(Scalar coef, Complex shift) {
  MeroSum m;
  m.digammaAtoms.push_back({std::move(coef), shift});
  return m.normalize();
}

MeroSum MeroSum::digamma_constant(Scalar coef, Complex arg) {
  MeroSum m;
  m.digammaConstants.push_back({std::move(coef), arg});
  return m.normalize();
}

namespace {

template <class T, class Key, class Less>
void merge_terms(std::vector<T>& items, Key key, Less less) {
  std::vector<T> out;
  for (auto& it : items) {
    auto found = std::find_if(out.begin(), out.end(), [&](const T& o) { return key(o, it); });
    if (found == out.end()) out.push_back(std::move(it));
    else found->coef = found->coef + it.coef;
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const T& t) { return t.coef.is_zero(); }), out.end());
  std::stable_sort(out.begin(), out.end(), less);
  items = std::move(out);
}

}  // namespace

MeroSum& MeroSum::normalize() {
  while (!polyPart.empty() && polyPart.back().is_zero()) polyPart.pop_back();
  merge_terms(
      poles, [](const Pole& a, const Pole& b) { return a.order == b.order && same_point(a.at, b.at); },
      [](const Pole& a, const Pole& b) {
        if (!same_point(a.at, b.at)) return point_less(a.at, b.at);
        return a.order < b.order;
      });
  merge_terms(
      digammaAtoms, [](const DigammaAtom& a, const DigammaAtom& b) { return same_point(a.shift, b.shift); },
      [](const DigammaAtom& a, const DigammaAtom& b) { return point_less(a.shift, b.shift); });
  merge_terms(
      digammaConstants, [](const DigammaConstant& a, const DigammaConstant& b) { return same_point(a.arg, b.arg); },
      [](const DigammaConstant& a, const DigammaConstant& b) { return point_less(a.arg, b.arg); });
  merge_terms(
      expAtoms, [](const ExpAtom& a, const ExpAtom& b) { return a.rate == b.rate; },
      [](const ExpAtom& a, const ExpAtom& b) { return a.rate < b.rate; });
  return *this;
}

bool MeroSum::is_zero() const {
  MeroSum m = *this;
  m.normalize();
  return m.polyPart.empty() && m.poles.empty() && m.digammaAtoms.empty() && m.digammaConstants.empty() &&
         m.expAtoms.empty();
}

MeroSum MeroSum::shifted(Complex a) const {
  MeroSum m;
  // sum p_k (z + a)^k by Horner on the coefficient list.
  for (std::size_t k = polyPart.size(); k-- > 0;) {
    std::vector<Scalar> next(m.polyPart.size() + 1);
    for (std::size_t i = 0; i < m.polyPart.size(); ++i) {
      next[i + 1] = next[i + 1] + m.polyPart[i];
      next[i] = next[i] + shift_scalar(a) * m.polyPart[i];
    }
    next[0] = next[0] + polyPart[k];
    m.polyPart = std::move(next);
  }
  for (const auto& p : poles) m.poles.push_back({p.at - a, p.order, p.coef});
  for (const auto& d : digammaAtoms) m.digammaAtoms.push_back({d.coef, d.shift + a});
  m.digammaConstants = digammaConstants;
  for (const auto& e : expAtoms) m.expAtoms.push_back({e.coef * Scalar::numeric(std::exp(-e.rate * a)), e.rate});
  return m.normalize();
}

MeroSum MeroSum::reflected() const {
  if (!digammaAtoms.empty() || !expAtoms.empty())
    throw ValidationError("reflection of digamma or exponential atoms", "UnsupportedAtom");
  MeroSum m = *this;
  for (std::size_t k = 1; k < m.polyPart.size(); k += 2) m.polyPart[k] = -m.polyPart[k];
  for (auto& p : m.poles) {
    p.at = -p.at;
    if (p.order % 2 == 1) p.coef = -p.coef;
  }
  return m.normalize();
}

MeroSum MeroSum::operator-() const { return Scalar(-1) * *this; }

MeroSum operator+(const MeroSum& a, const MeroSum& b) {
  MeroSum m = a;
  if (m.polyPart.size() < b.polyPart.size()) m.polyPart.resize(b.polyPart.size());
  for (std::size_t i = 0; i < b.polyPart.size(); ++i) m.polyPart[i] = m.polyPart[i] + b.polyPart[i];
  m.poles.insert(m.poles.end(), b.poles.begin(), b.poles.end());
  m.digammaAtoms.insert(m.digammaAtoms.end(), b.digammaAtoms.begin(), b.digammaAtoms.end());
  m.digammaConstants.insert(m.digammaConstants.end(), b.digammaConstants.begin(), b.digammaConstants.end());
  m.expAtoms.insert(m.expAtoms.end(), b.expAtoms.begin(), b.expAtoms.end());
  return m.normalize();
}

MeroSum operator*(const Scalar& c, const MeroSum& in) {
  MeroSum m = in;
  for (auto& p : m.polyPart) p = c * p;
  for (auto& p : m.poles) p.coef = c * p.coef;
  for (auto& d : m.digammaAtoms) d.coef = c * d.coef;
  for (auto& d : m.digammaConstants) d.coef = c * d.coef;
  for (auto& e : m.expAtoms) e.coef = c * e.coef;
  return m.normalize();
}

bool operator==(const MeroSum& x, const MeroSum& y) {
  MeroSum a = x, b = y;
  a.normalize();
  b.normalize();
  if (a.polyPart != b.polyPart) return false;
  if (a.poles.size() != b.poles.size() || a.digammaAtoms.size() != b.digammaAtoms.size() ||
      a.digammaConstants.size() != b.digammaConstants.size() || a.expAtoms.size() != b.expAtoms.size())
    return false;
  for (std::size_t i = 0; i < a.poles.size(); ++i)
    if (!same_point(a.poles[i].at, b.poles[i].at) || a.poles[i].order != b.poles[i].order ||
        !(a.poles[i].coef == b.poles[i].coef))
      return false;
  for (std::size_t i = 0; i < a.digammaAtoms.size(); ++i)
    if (!same_point(a.digammaAtoms[i].shift, b.digammaAtoms[i].shift) ||
        !(a.digammaAtoms[i].coef == b.digammaAtoms[i].coef))
      return false;
  for (std::size_t i = 0; i < a.digammaConstants.size(); ++i)
    if (!same_point(a.digammaConstants[i].arg, b.digammaConstants[i].arg) ||
        !(a.digammaConstants[i].coef == b.digammaConstants[i].coef))
      return false;
  for (std::size_t i = 0; i < a.expAtoms.size(); ++i)
    if (a.expAtoms[i].rate != b.expAtoms[i].rate || !(a.expAtoms[i].coef == b.expAtoms[i].coef)) return false;
  return true;
}

Complex evaluate(const MeroSum& m, Complex z) {
  Complex v{0.0};
  for (std::size_t k = m.polyPart.size(); k-- > 0;) v = v * z + m.polyPart[k].value();
  for (const auto& p : m.poles) {
    if (std::abs(z - p.at) <= 1e-14 * std::max(1.0, std::abs(p.at)))
      throw ComputationError("PoleEvaluation", "evaluation at a pole");
    v += p.coef.value() / std::pow(z - p.at, p.order);
  }
  for (const auto& d : m.digammaAtoms) v += d.coef.value() * cusped::digamma(z + d.shift);
  for (const auto& d : m.digammaConstants) v += d.coef.value() * cusped::digamma(d.arg);
  for (const auto& e : m.expAtoms) v += e.coef.value() * std::exp(-e.rate * z);
  return v;
}

Scalar residue_at(const MeroSum& m, Complex z0) {
  Scalar r = 0;
  for (const auto& p : m.poles)
    if (p.order == 1 && same_point(p.at, z0)) r = r + p.coef;
  for (const auto& d : m.digammaAtoms) {
    const Complex w = z0 + d.shift;
    const double n = std::round(w.real());
    if (std::abs(w.imag()) <= 1e-12 && n <= 0 && std::abs(w.real() - n) <= 1e-12) r = r - d.coef;
  }
  return r;
}

namespace {

nlohmann::ordered_json scalar_json(const Scalar& s) {
  nlohmann::ordered_json j;
  const Complex v = s.value();
  j["value"] = {v.real(), v.imag()};
  if (s.is_exact()) j["exact"] = s.exact_string();
  return j;
}

nlohmann::ordered_json point_json(Complex z) { return {z.real(), z.imag()}; }

}  // namespace

std::string to_json(const MeroSum& in, int indent) {
  MeroSum m = in;
  m.normalize();
  nlohmann::ordered_json j;
  j["polyPart"] = nlohmann::ordered_json::array();
  for (const auto& p : m.polyPart) j["polyPart"].push_back(scalar_json(p));
  j["poles"] = nlohmann::ordered_json::array();
  for (const auto& p : m.poles) {
    nlohmann::ordered_json e;
    e["at"] = point_json(p.at);
    e["order"] = p.order;
    e["coef"] = scalar_json(p.coef);
    j["poles"].push_back(e);
  }
  j["digammaAtoms"] = nlohmann::ordered_json::array();
  for (const auto& d : m.digammaAtoms) {
    nlohmann::ordered_json e;
    e["coef"] = scalar_json(d.coef);
    e["shift"] = point_json(d.shift);
    j["digammaAtoms"].push_back(e);
  }
  j["digammaConstants"] = nlohmann::ordered_json::array();
  for (const auto& d : m.digammaConstants) {
    nlohmann::ordered_json e;
    e["coef"] = scalar_json(d.coef);
    e["arg"] = point_json(d.arg);
    j["digammaConstants"].push_back(e);
  }
  j["expAtoms"] = nlohmann::ordered_json::array();
  for (const auto& x : m.expAtoms) {
    nlohmann::ordered_json e;
    e["coef"] = scalar_json(x.coef);
    e["rate"] = x.rate;
    j["expAtoms"].push_back(e);
  }
  return j.dump(indent);
}

// ---------------------------------------------------------- transforms

MeroSum lprime_closed(const HeatAtom& atom) {
  MeroSum m;
  switch (atom.kind) {
    case HeatAtom::Kind::Exp: {
      const double lambda = atom.param;
      if (lambda < 0) throw ValidationError("Exp atom needs lambda >= 0", "UnsupportedAtom");
      if (lambda == 0) {
        m = MeroSum::pole(0.0, 2);
      } else {
        const double r = std::sqrt(lambda);
        m = MeroSum::pole({0.0, r}, 1) + MeroSum::pole({0.0, -r}, 1);
      }
      break;
    }
    case HeatAtom::Kind::Power: {
      const double nu = atom.param;
      if (2 * nu != std::round(2 * nu)) throw ValidationError("Power atom needs a half integer", "UnsupportedAtom");
      const double g = 1.0 + nu;
      if (g <= 0 && g == std::round(g))
        throw ValidationError("Gamma(1 + nu) has a pole for nu = " + std::to_string(nu), "UnsupportedAtom");
      Scalar c;
      if (nu >= 0 && nu == std::round(nu)) {
        Rational f = 2;
        for (int k = 2; k <= static_cast<int>(nu); ++k) f *= k;
        c = f;
      } else {
        c = Scalar::numeric(2.0 * std::tgamma(g));
      }
      const int e = -static_cast<int>(std::lround(1 + 2 * nu));
      if (e >= 0) {
        m.polyPart.assign(static_cast<std::size_t>(e) + 1, Scalar(0));
        m.polyPart[static_cast<std::size_t>(e)] = c;
        m.normalize();
      } else {
        m = MeroSum::pole(0.0, c, -e);
      }
      break;
    }
    case HeatAtom::Kind::Theta:
      if (!(atom.param > 0)) throw ValidationError("Theta atom needs l > 0", "UnsupportedAtom");
      m.expAtoms.push_back({1, atom.param});
      break;
    case HeatAtom::Kind::DigammaKernel:
      if (atom.param < 0) throw ValidationError("DigammaKernel atom needs alpha >= 0", "UnsupportedAtom");
      m = MeroSum::digamma(Scalar::numeric(2.0 * kPi), atom.param);
      break;
  }
  return atom.coefficient * m;
}

namespace {

using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;

// integral of Re psi(alpha + i x) e^{-t x^2} over x >= 0
double digamma_gauss(double alpha, double t) {
  constexpr double head = 4.0;
  auto near = [&](double x) { return cusped::digamma(Complex(alpha, x)).real() * std::exp(-t * x * x); };
  auto far = [&](double v) {
    const double x = std::exp(v);
    return cusped::digamma(Complex(alpha, x)).real() * std::exp(-t * x * x) * x;
  };
  const double vmax = std::log(7.0 / std::sqrt(t));
  double total = gauss_kronrod<double, 61>::integrate(near, 0.0, std::min(head, 7.0 / std::sqrt(t)), 8, 1e-14);
  if (vmax > std::log(head)) total += gauss_kronrod<double, 61>::integrate(far, std::log(head), vmax, 8, 1e-14);
  return total;
}

}  // namespace

std::function<Complex(double)> heat_function(const HeatAtom& atom) {
  const Complex c = atom.coefficient.value();
  const double p = atom.param;
  switch (atom.kind) {
    case HeatAtom::Kind::Exp:
      return [=](double t) { return c * std::exp(-t * p); };
    case HeatAtom::Kind::Power:
      return [=](double t) { return c * std::pow(t, p); };
    case HeatAtom::Kind::Theta:
      return [=](double t) { return c * std::exp(-p * p / (4.0 * t)) / std::sqrt(4.0 * kPi * t); };
    case HeatAtom::Kind::DigammaKernel:
      // For alpha = 0 this is the limit alpha -> 0+, which picks up -pi
      // from the pole of psi at the origin.
      if (p == 0) return [=](double t) { return c * (2.0 * digamma_gauss(1.0, t) - kPi); };
      return [=](double t) { return c * 2.0 * digamma_gauss(p, t); };
  }
  return {};
}

namespace {

Complex expm1c(Complex w) {
  const double a = w.real(), b = w.imag();
  const double h = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * h * h, std::exp(a) * std::sin(b)};
}

}  // namespace

Complex quadrature_lprime(const std::function<Complex(double)>& f, Complex z, const QuadratureOptions& opt) {
  if (!(z.real() > 0)) throw ValidationError("quadrature needs Re z > 0");
  const Complex z2 = z * z;
  const bool fp = opt.singularCoeff != Complex(0.0);
  double err_total = 0.0;
  auto integrate = [&](auto&& g, double a, double b) {
    auto part = [&](bool imag) {
      const std::function<double(double)> h = [&](double x) {
        const Complex y = g(x);
        return imag ? y.imag() : y.real();
      };
      static thread_local tanh_sinh<double> finite(15);
      double err = 0.0, l1 = 0.0;
      const double v = std::isinf(b) ? gauss_kronrod<double, 61>::integrate(h, a, b, 15, 1e-13, &err)
                                     : finite.integrate(h, a, b, 1e-13, &err, &l1);
      err_total += err;
      return v;
    };
    return Complex(part(false), part(true));
  };
  // [0, 1] with t = u^4.
  const Complex inner = integrate(
      [&](double u) {
        const double u2 = u * u;
        const double t = u2 * u2;
        if (t < 1e-200) return Complex(0.0);
        Complex v = std::exp(-t * z2) * f(t);
        if (fp) v += opt.singularCoeff * std::pow(t, opt.singularPower) * expm1c(-t * z2);
        return 4.0 * u2 * u * v;
      },
      0.0, 1.0);
  const Complex outer = integrate(
      [&](double t) {
        Complex v = std::exp(-t * z2) * f(t);
        if (fp) v += opt.singularCoeff * std::pow(t, opt.singularPower) * std::exp(-t * z2);
        return v;
      },
      1.0,
                                  std::numeric_limits<double>::infinity());
  Complex total = inner + outer;
  if (fp) total += opt.singularCoeff / (opt.singularPower + 1.0);
  const Complex result = 2.0 * z * total;
  if (!std::isfinite(err_total) || 2.0 * std::abs(z) * err_total > std::max(opt.tolerance, opt.tolerance * std::abs(result)))
    throw ComputationError("QuadratureFailure", "quadrature error estimate " + std::to_string(err_total) +
                                                    " above target");
  return result;
}

namespace {

template <class Eigen>
SpectralTransforms spectral_impl(const std::vector<Eigen>& eigen0, const std::vector<Eigen>& eigen1,
                                 double (*to_double)(const Eigen&)) {
  SpectralTransforms out;
  auto exp_term = [&](const Eigen& lam) { return lprime_closed(HeatAtom::exp(to_double(lam))); };
  for (const auto& a : eigen1) out.L1 = out.L1 + exp_term(a);
  for (const auto& b : eigen0) out.L1 = out.L1 - exp_term(b);
  // L'(e^t e^{-t beta})(w) = 2w / (w^2 + beta - 1), then w = z - 1.
  for (const auto& b : eigen0) {
    const double m = to_double(b) - 1.0;
    MeroSum w;
    if (m == 0) {
      w = MeroSum::pole(0.0, 2);
    } else if (m > 0) {
      const double r = std::sqrt(m);
      w = MeroSum::pole({0.0, r}, 1) + MeroSum::pole({0.0, -r}, 1);
    } else {
      const double r = std::sqrt(-m);
      w = MeroSum::pole(r, 1) + MeroSum::pole(-r, 1);
    }
    out.L0 = out.L0 + w.shifted(-1.0);
  }
  return out;
}

double rational_to_double(const Rational& q) { return static_cast<double>(q); }
double double_to_double(const double& x) { return x; }

}  // namespace

SpectralTransforms spectral_lprime(const std::vector<Rational>& eigen0, const std::vector<Rational>& eigen1) {
  for (const auto& q : eigen0)
    if (q < 0) throw ValidationError("eigenvalues must be nonnegative");
  for (const auto& q : eigen1)
    if (q < 0) throw ValidationError("eigenvalues must be nonnegative");
  return spectral_impl(eigen0, eigen1, &rational_to_double);
}

SpectralTransforms spectral_lprime(const std::vector<double>& eigen0, const std::vector<double>& eigen1) {
  for (double q : eigen0)
    if (q < 0) throw ValidationError("eigenvalues must be nonnegative");
  for (double q : eigen1)
    if (q < 0) throw ValidationError("eigenvalues must be nonnegative");
  return spectral_impl(eigen0, eigen1, &double_to_double);
}

Complex contour_kernel(double z, Complex alpha) {
  if (alpha.imag() == 0.0) throw ValidationError("alpha on the real axis", "RealAlpha");
  if (!(z > 0)) throw ValidationError("contour_kernel needs z > 0");
  const double s = alpha.imag() > 0 ? 1.0 : -1.0;
  const Complex i{0.0, 1.0};
  return s * kPi * i / (z * (z - s * i * alpha));
}

Complex contour_integral_numeric(double z, Complex alpha) {
  if (alpha.imag() == 0.0) throw ValidationError("alpha on the real axis", "RealAlpha");
  auto part = [&](bool imag) {
    auto f = [&](double x) {
      const Complex v = 1.0 / ((x * x + z * z) * (x - alpha));
      return imag ? v.imag() : v.real();
    };
    const double inf = std::numeric_limits<double>::infinity();
    return gauss_kronrod<double, 61>::integrate(f, -inf, alpha.real(), 20, 1e-14) +
           gauss_kronrod<double, 61>::integrate(f, alpha.real(), inf, 20, 1e-14);
  };
  return {part(false), part(true)};
}

}  // namespace cusped
