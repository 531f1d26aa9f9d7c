#include "cusped/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "cusped/errors.hpp"

namespace cusped {

LaurentPoly::LaurentPoly(Cyclotomic constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

LaurentPoly LaurentPoly::monomial(Cyclotomic c, int exponent) {
  LaurentPoly p(std::move(c));
  if (!p.is_zero()) p.low_ = exponent;
  return p;
}

LaurentPoly LaurentPoly::from_coefficients(int low, std::vector<Cyclotomic> coeffs) {
  LaurentPoly p;
  p.low_ = low;
  p.c_ = std::move(coeffs);
  p.trim();
  return p;
}

LaurentPoly LaurentPoly::from_integers(int low, const std::vector<long long>& coeffs) {
  std::vector<Cyclotomic> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) c.emplace_back(v);
  return from_coefficients(low, std::move(c));
}

void LaurentPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  std::size_t lead_zeros = 0;
  while (lead_zeros < c_.size() && c_[lead_zeros].is_zero()) ++lead_zeros;
  if (lead_zeros) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
    low_ += static_cast<int>(lead_zeros);
  }
  if (c_.empty()) low_ = 0;
}

Cyclotomic LaurentPoly::coeff(int exponent) const {
  if (is_zero() || exponent < low_ || exponent > high()) return Cyclotomic();
  return c_[static_cast<std::size_t>(exponent - low_)];
}

LaurentPoly LaurentPoly::normalized() const {
  if (is_zero()) return *this;
  LaurentPoly p = *this;
  p.low_ = 0;
  const Cyclotomic inv = c_.back().inverse();
  for (auto& c : p.c_) c *= inv;
  return p;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p = *this;
  if (!p.is_zero()) p.low_ += k;
  return p;
}

Cyclotomic LaurentPoly::evaluate(const Cyclotomic& t) const {
  if (is_zero()) return Cyclotomic();
  // Horner on the polynomial part, then the t^low factor.
  Cyclotomic acc = c_.back();
  for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * t + c_[i];
  if (low_ > 0) {
    for (int i = 0; i < low_; ++i) acc *= t;
  } else if (low_ < 0) {
    const Cyclotomic inv = t.inverse();
    for (int i = 0; i < -low_; ++i) acc *= inv;
  }
  return acc;
}

std::complex<double> LaurentPoly::evaluate(std::complex<double> t) const {
  if (is_zero()) return {0.0, 0.0};
  std::complex<double> acc = c_.back().to_complex();
  for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * t + c_[i].to_complex();
  return acc * std::pow(t, low_);
}

Cyclotomic LaurentPoly::at_one() const {
  Cyclotomic s;
  for (const auto& c : c_) s += c;
  return s;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e = high(); e >= low_; --e) {
    const Cyclotomic& c = c_[static_cast<std::size_t>(e - low_)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << c.to_string() << ")*t^" << e;
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string x) {
    const auto b = x.find_first_not_of(" \t");
    const auto e = x.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  s = strip(s);
  if (s == "0") return {};
  LaurentPoly out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(" + ", pos);
    const std::string term = strip(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    const auto close = term.rfind(")*t^");
    if (term.empty() || term.front() != '(' || close == std::string::npos)
      throw SyntaxError("malformed Laurent term '" + term + "'");
    const Cyclotomic c = Cyclotomic::parse(term.substr(1, close - 1));
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(term.substr(close + 4), &used);
      if (used != term.size() - close - 4) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw SyntaxError("malformed exponent in '" + term + "'");
    }
    out += monomial(c, e);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  std::vector<Cyclotomic> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < c_.size(); ++i) c[static_cast<std::size_t>(low_ - lo) + i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[static_cast<std::size_t>(o.low_ - lo) + i] += o.c_[i];
  low_ = lo;
  c_ = std::move(c);
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Cyclotomic> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return LaurentPoly::from_coefficients(a.low_ + b.low_, std::move(c));
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.low_ == b.low_ && a.c_ == b.c_;
}

LaurentPoly t_minus_one() { return LaurentPoly::from_integers(0, {-1, 1}); }

std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw ComputationError("DivisionByZero", "polynomial division by zero");
  if (a.low() < 0 || b.low() < 0)
    throw ComputationError("NotPolynomial", "poly_divmod needs nonnegative exponents");
  if (a.is_zero() || a.high() < b.high()) return {LaurentPoly(), a};
  // Dense copies indexed by exponent.
  std::vector<Cyclotomic> r(static_cast<std::size_t>(a.high()) + 1);
  for (int e = a.low(); e <= a.high(); ++e) r[static_cast<std::size_t>(e)] = a.coeff(e);
  std::vector<Cyclotomic> d(static_cast<std::size_t>(b.high()) + 1);
  for (int e = b.low(); e <= b.high(); ++e) d[static_cast<std::size_t>(e)] = b.coeff(e);
  const Cyclotomic lead_inv = b.leading().inverse();
  const std::size_t db = d.size() - 1;
  std::vector<Cyclotomic> q(r.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Cyclotomic c = r[k + db] * lead_inv;
    if (c.is_zero()) continue;
    q[k] = c;
    for (std::size_t j = 0; j <= db; ++j)
      if (!d[j].is_zero()) r[k + j] -= c * d[j];
  }
  r.resize(db);
  return {LaurentPoly::from_coefficients(0, std::move(q)), LaurentPoly::from_coefficients(0, std::move(r))};
}

LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw ComputationError("DivisionByZero", "Laurent division by zero");
  if (a.is_zero()) return {};
  auto [q, r] = poly_divmod(a.shifted(-a.low()), b.shifted(-b.low()));
  if (!r.is_zero()) throw ComputationError("NotDivisible", b.to_string() + " does not divide " + a.to_string());
  return q.shifted(a.low() - b.low());
}

bool divides(const LaurentPoly& b, const LaurentPoly& a) {
  if (b.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  return poly_divmod(a.shifted(-a.low()), b.shifted(-b.low())).second.is_zero();
}

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly x = a.normalized();
  LaurentPoly y = b.normalized();
  while (!y.is_zero()) {
    LaurentPoly r = poly_divmod(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? r : r.normalized();
  }
  return x.normalized();
}

int ord_at_one(const LaurentPoly& f) {
  if (f.is_zero()) throw ComputationError("ZeroPolynomial", "ord_at_one of the zero polynomial");
  // Synthetic division by (t - 1) on the polynomial part.
  std::vector<Cyclotomic> c = f.coefficients();
  int k = 0;
  while (c.size() > 1) {
    std::vector<Cyclotomic> q(c.size() - 1);
    Cyclotomic carry = c.back();
    q.back() = carry;
    for (std::size_t i = c.size() - 1; i-- > 1;) {
      carry = c[i] + carry;
      q[i - 1] = carry;
    }
    const Cyclotomic remainder = c[0] + carry;
    if (!remainder.is_zero()) break;
    c = std::move(q);
    ++k;
  }
  return k;
}

}  // namespace cusped
