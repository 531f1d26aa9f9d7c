#include "cusped/presentation.hpp"

#include <cctype>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "cusped/errors.hpp"

namespace cusped {

// ---------------------------------------------------------------- words

GroupWord::GroupWord(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exp = -l.exp;
  GroupWord w;
  w.letters_ = std::move(out);
  return w;
}

GroupWord GroupWord::power(int k) const {
  const GroupWord base = k < 0 ? inverse() : *this;
  GroupWord out;
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

GroupWord GroupWord::cyclically_reduced() const {
  std::size_t b = 0, e = letters_.size();
  while (e - b >= 2 && letters_[b].gen == letters_[e - 1].gen && letters_[b].exp == -letters_[e - 1].exp) {
    ++b;
    --e;
  }
  GroupWord w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(b),
                    letters_.begin() + static_cast<std::ptrdiff_t>(e));
  return w;
}

std::vector<long long> GroupWord::exponent_sums(std::size_t arity) const {
  std::vector<long long> s(arity, 0);
  for (const auto& l : letters_) s.at(static_cast<std::size_t>(l.gen)) += l.exp;
  return s;
}

std::string GroupWord::to_string(const std::vector<std::string>& names) const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    std::string tok = names.at(static_cast<std::size_t>(letters_[i].gen));
    if (letters_[i].exp < 0) tok[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    out += tok;
  }
  return out;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  std::vector<Letter> l = a.letters_;
  l.insert(l.end(), b.letters_.begin(), b.letters_.end());
  return GroupWord(std::move(l));
}

// ------------------------------------------------------ homomorphisms

long long Epsilon::operator()(const GroupWord& w) const {
  long long s = 0;
  for (const auto& l : w.letters()) s += values.at(static_cast<std::size_t>(l.gen)) * l.exp;
  return s;
}

long long UnitCharacter::exponent(const GroupWord& w) const {
  long long s = 0;
  for (const auto& l : w.letters()) s += exponents.at(static_cast<std::size_t>(l.gen)) * l.exp;
  s %= modulus;
  if (s < 0) s += modulus;
  return s;
}

Cyclotomic UnitCharacter::value(const GroupWord& w) const {
  return Cyclotomic::root_of_unity(modulus, exponent(w));
}

std::complex<double> UnitCharacter::value_complex(const GroupWord& w) const {
  const double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(exponent(w)) / modulus;
  return std::polar(1.0, angle);
}

bool UnitCharacter::is_trivial() const {
  for (long long e : exponents)
    if (e % modulus != 0) return false;
  return true;
}

// -------------------------------------------------------- group ring

GroupRingElement GroupRingElement::of(const GroupWord& w, long long coeff) {
  GroupRingElement e;
  e.add(w, coeff);
  return e;
}

void GroupRingElement::add(const GroupWord& w, long long coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string GroupRingElement::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    const long long a = std::abs(c);
    if (a != 1 || w.empty()) {
      out += std::to_string(a);
      if (!w.empty()) out += "*";
    }
    if (!w.empty()) out += "(" + w.to_string(names) + ")";
  }
  return out;
}

GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
  for (const auto& [w, c] : b.terms_) a.add(w, c);
  return a;
}

GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) {
  for (const auto& [w, c] : b.terms_) a.add(w, -c);
  return a;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out;
  for (const auto& [u, cu] : a.terms_)
    for (const auto& [v, cv] : b.terms_) out.add(u * v, cu * cv);
  return out;
}

// -------------------------------------------------------------- fox

GroupRingElement fox_derivative(const GroupWord& w, int gen) {
  GroupRingElement out;
  std::vector<Letter> prefix;
  for (const Letter& l : w.letters()) {
    if (l.gen == gen) {
      if (l.exp > 0) {
        out.add(GroupWord(prefix), 1);
      } else {
        std::vector<Letter> with = prefix;
        with.push_back(l);
        out.add(GroupWord(std::move(with)), -1);
      }
    }
    prefix.push_back(l);
  }
  return out;
}

LaurentPoly evaluate_twisted(const GroupRingElement& e, const UnitCharacter& rho, const Epsilon& eps) {
  LaurentPoly out;
  for (const auto& [w, c] : e.terms()) {
    Cyclotomic coeff = rho.value(w) * Cyclotomic(c);
    out += LaurentPoly::monomial(std::move(coeff), static_cast<int>(eps(w)));
  }
  return out;
}

bool peripheral_trivial(const GroupPresentation& p, const UnitCharacter& rho) {
  if (p.peripheral_words.empty())
    throw ValidationError("presentation has no peripheral words", "MissingPeripheralData");
  for (const auto& w : p.peripheral_words)
    if (rho.exponent(w) != 0) return false;
  return true;
}

// ----------------------------------------------------------- parsing

namespace {

struct Problems {
  std::vector<std::string> items;
  int first_line = 0;
  int first_col = 0;

  void add(int line, int col, const std::string& msg) {
    if (items.empty()) {
      first_line = line;
      first_col = col;
    }
    items.push_back(std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
  void raise_if_any() const {
    if (items.empty()) return;
    std::string all;
    for (const auto& s : items) all += (all.empty() ? "" : "\n") + s;
    throw SyntaxError(all, first_line, first_col);
  }
};

struct Token {
  std::string text;
  int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t b = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(b, i - b), static_cast<int>(b) + 1});
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

// Resolve one token to letters; single-letter alphabets allow "abAB".
bool resolve_token(const std::string& tok, const std::vector<std::string>& names, std::vector<Letter>& out) {
  for (std::size_t g = 0; g < names.size(); ++g) {
    if (tok == names[g]) {
      out.push_back({static_cast<int>(g), 1});
      return true;
    }
    std::string inv = names[g];
    inv[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(inv[0])));
    if (tok == inv) {
      out.push_back({static_cast<int>(g), -1});
      return true;
    }
  }
  if (tok.size() > 1) {
    std::vector<Letter> tmp;
    for (char c : tok)
      if (!resolve_token(std::string(1, c), names, tmp)) return false;
    out.insert(out.end(), tmp.begin(), tmp.end());
    return true;
  }
  return false;
}

bool parse_int(const std::string& s, long long& v) {
  try {
    std::size_t used = 0;
    v = std::stoll(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string format_int_list(const std::vector<long long>& v) {
  std::string out;
  for (long long x : v) out += " " + std::to_string(x);
  return out;
}

}  // namespace

GroupWord parse_word(std::string_view text, const std::vector<std::string>& names) {
  std::vector<Letter> letters;
  for (const auto& tok : tokenize(std::string(text))) {
    if (tok.text == "1") continue;
    if (!resolve_token(tok.text, names, letters))
      throw SyntaxError("unknown generator '" + tok.text + "'", 1, tok.col);
  }
  return GroupWord(std::move(letters));
}

PresentationFile parse_presentation(std::string_view text) {
  PresentationFile out;
  GroupPresentation& p = out.presentation;
  Problems problems;
  bool have_gens = false, have_eps = false, have_rho = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  auto parse_word_tokens = [&](const std::vector<Token>& toks, int ln) -> std::optional<GroupWord> {
    if (!have_gens) {
      problems.add(ln, toks[0].col, "word before 'gens' line");
      return std::nullopt;
    }
    if (toks.size() < 2) {
      problems.add(ln, toks[0].col, "expected a word");
      return std::nullopt;
    }
    std::vector<Letter> letters;
    bool ok = true;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (toks[i].text == "1") continue;
      if (!resolve_token(toks[i].text, p.generator_names, letters)) {
        problems.add(ln, toks[i].col, "unknown generator '" + toks[i].text + "'");
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return GroupWord(std::move(letters));
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      p.comments.push_back(line);
      continue;
    }
    const auto toks = tokenize(line);
    const std::string& kw = toks[0].text;
    if (kw == "gens") {
      if (have_gens) {
        problems.add(lineno, toks[0].col, "duplicate 'gens' line");
        continue;
      }
      have_gens = true;
      std::set<std::string> seen;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!valid_name(toks[i].text))
          problems.add(lineno, toks[i].col, "invalid generator name '" + toks[i].text + "'");
        else if (!seen.insert(toks[i].text).second)
          problems.add(lineno, toks[i].col, "duplicate generator name '" + toks[i].text + "'");
        p.generator_names.push_back(toks[i].text);
      }
    } else if (kw == "rel") {
      if (auto w = parse_word_tokens(toks, lineno)) {
        if (w->empty()) problems.add(lineno, toks[0].col, "relator reduces to the identity");
        else p.relators.push_back(std::move(*w));
      }
    } else if (kw == "peri") {
      if (auto w = parse_word_tokens(toks, lineno)) p.peripheral_words.push_back(std::move(*w));
    } else if (kw == "eps") {
      if (have_eps) problems.add(lineno, toks[0].col, "duplicate 'eps' line");
      have_eps = true;
      out.epsilon.values.clear();
      for (std::size_t i = 1; i < toks.size(); ++i) {
        long long v = 0;
        if (!parse_int(toks[i].text, v)) problems.add(lineno, toks[i].col, "expected integer");
        out.epsilon.values.push_back(v);
      }
    } else if (kw == "rho") {
      if (have_rho) problems.add(lineno, toks[0].col, "duplicate 'rho' line");
      have_rho = true;
      // rho n=<int>: <int>+
      long long n = 0;
      std::size_t start = 2;
      if (toks.size() < 2 || toks[1].text.rfind("n=", 0) != 0 || toks[1].text.back() != ':' ||
          !parse_int(toks[1].text.substr(2, toks[1].text.size() - 3), n) || n <= 0) {
        problems.add(lineno, toks.size() > 1 ? toks[1].col : toks[0].col, "expected 'n=<positive int>:'");
        continue;
      }
      out.rho.modulus = static_cast<int>(n);
      out.rho.exponents.clear();
      for (std::size_t i = start; i < toks.size(); ++i) {
        long long v = 0;
        if (!parse_int(toks[i].text, v)) problems.add(lineno, toks[i].col, "expected integer");
        out.rho.exponents.push_back(v);
      }
    } else if (kw == "vol") {
      if (toks.size() != 2) {
        problems.add(lineno, toks[0].col, "expected one volume value");
        continue;
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(toks[1].text, &used);
        if (used != toks[1].text.size() || !(v > 0)) throw std::invalid_argument("vol");
        p.volume = v;
        p.volume_text = toks[1].text;
      } catch (const std::exception&) {
        problems.add(lineno, toks[1].col, "volume must be a positive real");
      }
    } else {
      problems.add(lineno, toks[0].col, "unknown directive '" + kw + "'");
    }
  }

  if (!have_gens) problems.add(lineno + 1, 1, "missing 'gens' line");
  if (!have_eps) problems.add(lineno + 1, 1, "missing 'eps' line");
  if (have_gens && have_eps && out.epsilon.values.size() != p.arity())
    problems.add(lineno + 1, 1, "eps has " + std::to_string(out.epsilon.values.size()) + " values for " +
                                     std::to_string(p.arity()) + " generators");
  if (!have_rho) out.rho = UnitCharacter::trivial(p.arity());
  else if (have_gens && out.rho.exponents.size() != p.arity())
    problems.add(lineno + 1, 1, "rho has " + std::to_string(out.rho.exponents.size()) + " exponents for " +
                                     std::to_string(p.arity()) + " generators");
  problems.raise_if_any();

  // Semantic checks on relators.
  std::vector<std::string> bad;
  long long g = 0;
  for (long long v : out.epsilon.values) g = std::gcd(g, v);
  if (g != 1) bad.push_back("eps is not surjective (gcd of values is " + std::to_string(g) + ")");
  for (const auto& r : p.relators) {
    if (out.epsilon(r) != 0)
      bad.push_back("eps(" + r.to_string(p.generator_names) + ") = " + std::to_string(out.epsilon(r)) + " != 0");
    if (out.rho.exponent(r) != 0)
      bad.push_back("rho(" + r.to_string(p.generator_names) + ") = zeta_" + std::to_string(out.rho.modulus) +
                    "^" + std::to_string(out.rho.exponent(r)) + " != 1");
  }
  if (!bad.empty()) {
    std::string all;
    for (const auto& s : bad) all += (all.empty() ? "" : "; ") + s;
    throw ValidationError(all);
  }
  return out;
}

std::string serialize_presentation(const PresentationFile& file) {
  const GroupPresentation& p = file.presentation;
  std::string out;
  for (const auto& c : p.comments) out += c + "\n";
  out += "gens";
  for (const auto& n : p.generator_names) out += " " + n;
  out += "\n";
  for (const auto& r : p.relators) out += "rel " + r.to_string(p.generator_names) + "\n";
  for (const auto& w : p.peripheral_words) out += "peri " + w.to_string(p.generator_names) + "\n";
  out += "eps" + format_int_list(file.epsilon.values) + "\n";
  out += "rho n=" + std::to_string(file.rho.modulus) + ":" + format_int_list(file.rho.exponents) + "\n";
  if (p.volume) {
    if (!p.volume_text.empty()) {
      out += "vol " + p.volume_text + "\n";
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", *p.volume);
      out += std::string("vol ") + buf + "\n";
    }
  }
  return out;
}

}  // namespace cusped
