#include "cusped/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cusped/errors.hpp"

namespace cusped {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of p modulo the monic integer polynomial m, in place.
void reduce_mod(QPoly& p, const std::vector<BigInt>& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t i = p.size(); i-- > d;) {
    const Rational c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * Rational(m[j]);
  }
  p.resize(d, Rational(0));
}

// Quotient and remainder over Q[x]; b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = a[k + b.size() - 1] / lead;
    q[k] = c;
    if (c != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

int euler_phi(int n) {
  if (n <= 0) throw ValidationError("cyclotomic modulus must be positive");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<BigInt>& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<BigInt>> cache;
  if (n <= 0) throw ValidationError("cyclotomic modulus must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  QPoly num(static_cast<std::size_t>(n) + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& phid = cyclotomic_polynomial(d);
    QPoly den(phid.begin(), phid.end());
    num = divmod(num, den).first;
  }
  std::vector<BigInt> out;
  out.reserve(num.size());
  for (const auto& q : num) out.push_back(boost::multiprecision::numerator(q));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(out)).first->second;
}

int common_modulus(int a, int b) { return std::lcm(a, b); }

Cyclotomic::Cyclotomic(Rational q, int modulus) : n_(modulus) {
  c_.assign(static_cast<std::size_t>(euler_phi(modulus)), Rational(0));
  c_[0] = std::move(q);
}

Cyclotomic Cyclotomic::from_coefficients(int n, std::vector<Rational> coeffs) {
  Cyclotomic r(Rational(0), n);
  reduce_mod(coeffs, cyclotomic_polynomial(n));
  r.c_ = std::move(coeffs);
  return r;
}

Cyclotomic Cyclotomic::root_of_unity(int n, long long k) {
  if (n <= 0) throw ValidationError("cyclotomic modulus must be positive");
  long long e = k % n;
  if (e < 0) e += n;
  QPoly p(static_cast<std::size_t>(e) + 1, Rational(0));
  p[static_cast<std::size_t>(e)] = 1;
  return from_coefficients(n, std::move(p));
}

bool Cyclotomic::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const {
  if (c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::lifted(int m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw ValidationError("cannot lift Q(zeta_" + std::to_string(n_) +
                                         ") into Q(zeta_" + std::to_string(m) + ")");
  const std::size_t step = static_cast<std::size_t>(m / n_);
  QPoly p((c_.size() - 1) * step + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
  return from_coefficients(m, std::move(p));
}

Cyclotomic Cyclotomic::conj() const {
  QPoly p(static_cast<std::size_t>(n_), Rational(0));
  p[0] = c_[0];
  for (std::size_t i = 1; i < c_.size(); ++i) p[static_cast<std::size_t>(n_) - i] += c_[i];
  return from_coefficients(n_, std::move(p));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw ComputationError("DivisionByZero", "inverse of zero cyclotomic number");
  // Extended Euclid: track s with s*a == r (mod Phi_n).
  const auto& phi = cyclotomic_polynomial(n_);
  QPoly r0(phi.begin(), phi.end());
  QPoly r1 = c_;
  trim(r1);
  QPoly s0{}, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const Rational inv = 1 / r1[0];
  for (auto& q : s1) q *= inv;
  return from_coefficients(n_, std::move(s1));
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z{0.0, 0.0};
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / n_;
    z += c_[i].convert_to<double>() * std::polar(1.0, angle);
  }
  return z;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i];
  }
  os << "]@" << n_;
  return os.str();
}

Cyclotomic Cyclotomic::parse(std::string_view text) {
  const auto at = text.rfind('@');
  if (text.empty() || text.front() != '[' || at == std::string_view::npos || at == 0 ||
      text[at - 1] != ']')
    throw SyntaxError("malformed cyclotomic literal '" + std::string(text) + "'");
  int n = 0;
  try {
    n = std::stoi(std::string(text.substr(at + 1)));
  } catch (const std::exception&) {
    throw SyntaxError("malformed cyclotomic modulus in '" + std::string(text) + "'");
  }
  if (n <= 0) throw SyntaxError("cyclotomic modulus must be positive");
  QPoly coeffs;
  std::string body(text.substr(1, at - 2));
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      coeffs.emplace_back(item);
    } catch (const std::exception&) {
      throw SyntaxError("malformed rational '" + item + "'");
    }
  }
  if (coeffs.empty()) throw SyntaxError("empty cyclotomic literal");
  return from_coefficients(n, std::move(coeffs));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.n_ != n_) {
    const int m = common_modulus(n_, o.n_);
    *this = lifted(m);
    return *this += o.lifted(m);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.n_ != n_) {
    const int m = common_modulus(n_, o.n_);
    *this = lifted(m);
    return *this *= o.lifted(m);
  }
  if (n_ == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  QPoly p = mul(c_, o.c_);
  if (p.empty()) p.assign(1, Rational(0));
  reduce_mod(p, cyclotomic_polynomial(n_));
  c_ = std::move(p);
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) {
    const int m = common_modulus(a.n_, b.n_);
    return a.lifted(m).c_ == b.lifted(m).c_;
  }
  return a.c_ == b.c_;
}

}  // namespace cusped
