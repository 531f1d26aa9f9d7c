#include "cusped/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "cusped/errors.hpp"
#include "cusped/parallel.hpp"

namespace cusped {

namespace {
constexpr double kPi = std::numbers::pi;
}

MoebiusMatrix MoebiusMatrix::normalized() const {
  const Complex dt = det();
  if (std::abs(dt) == 0.0) throw ValidationError("singular matrix");
  const Complex s = std::sqrt(dt);
  return {a / s, b / s, c / s, d / s};
}

MoebiusMatrix operator*(const MoebiusMatrix& x, const MoebiusMatrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

double canonical_angle(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Complex complex_length_from_trace(Complex trace) {
  Complex lambda = 2.0 * std::acosh(trace / 2.0);
  if (lambda.real() < 0) lambda = -lambda;
  return {lambda.real(), canonical_angle(lambda.imag())};
}

Classification classify(const MoebiusMatrix& m) {
  constexpr double tol = 1e-9;
  const Complex tr = m.trace();
  if (std::abs(tr.imag()) <= tol && std::abs(tr.real()) <= 2.0 + tol) {
    if (std::abs(std::abs(tr.real()) - 2.0) <= tol) {
      if (std::abs(m.b) <= tol && std::abs(m.c) <= tol && std::abs(m.a - m.d) <= tol) return Identity{};
      return Parabolic{};
    }
    return Elliptic{};
  }
  const Complex lambda = complex_length_from_trace(tr);
  return Loxodromic{lambda.real(), lambda.imag()};
}

// ------------------------------------------------------------- words

std::string spectrum_word(const GroupWord& w) {
  std::string s;
  for (const auto& l : w.letters()) s += static_cast<char>((l.exp > 0 ? 'a' : 'A') + l.gen);
  return s;
}

GroupWord parse_spectrum_word(std::string_view s) {
  std::vector<Letter> letters;
  for (char ch : s) {
    if (ch >= 'a' && ch <= 'z') letters.push_back({ch - 'a', 1});
    else if (ch >= 'A' && ch <= 'Z') letters.push_back({ch - 'A', -1});
    else throw FormatError(std::string("invalid word letter '") + ch + "'");
  }
  return GroupWord(std::move(letters));
}

namespace {

// Shorter first, then a < A < b < B < ...
bool word_less(const GroupWord& x, const GroupWord& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& p = x.letters()[i];
    const auto& q = y.letters()[i];
    if (p.gen != q.gen) return p.gen < q.gen;
    if (p.exp != q.exp) return p.exp > q.exp;
  }
  return false;
}

struct Candidate {
  Complex trace2;  // square of the trace; sign free
  Complex rho;
  GroupWord word;
};

// Conjugacy classes up to inversion, keyed by trace^2 and {rho, conj rho}.
class ClassTable {
 public:
  explicit ClassTable(double tol) : tol_(tol) {}

  void insert(Candidate c) {
    const auto key = bucket(c.trace2);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets_.find(pack(key.first + dx, key.second + dy));
        if (it == buckets_.end()) continue;
        for (std::size_t idx : it->second) {
          Candidate& e = items_[idx];
          if (same(e, c)) {
            if (word_less(c.word, e.word)) e = std::move(c);
            return;
          }
        }
      }
    buckets_[pack(key.first, key.second)].push_back(items_.size());
    items_.push_back(std::move(c));
  }

  std::vector<Candidate> take() { return std::move(items_); }

 private:
  static constexpr double kGrid = 1e-6;

  static std::pair<long long, long long> bucket(Complex z) {
    return {std::llround(z.real() / kGrid), std::llround(z.imag() / kGrid)};
  }
  static std::string pack(long long x, long long y) { return std::to_string(x) + ":" + std::to_string(y); }

  bool same(const Candidate& x, const Candidate& y) const {
    const double scale = std::max(1.0, std::abs(x.trace2));
    if (std::abs(x.trace2 - y.trace2) > tol_ * scale) return false;
    return std::abs(x.rho - y.rho) <= tol_ || std::abs(x.rho - std::conj(y.rho)) <= tol_;
  }

  double tol_;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
  std::vector<Candidate> items_;
};

struct Unoriented {
  Complex lambda;
  Complex rho;
  GroupWord word;
  int multiplicity = 1;
  double primitiveLength = 0.0;
};

MoebiusMatrix word_matrix(const GroupWord& w, const std::vector<MoebiusMatrix>& gens,
                          const std::vector<MoebiusMatrix>& invs) {
  MoebiusMatrix m;
  for (const auto& l : w.letters()) m = m * (l.exp > 0 ? gens[l.gen] : invs[l.gen]);
  return m;
}

Complex conj0(Complex z) { return {z.real() + 0.0, -z.imag() + 0.0}; }

Complex word_rho(const GroupWord& w, const std::vector<Complex>& rho) {
  Complex v{1.0};
  for (const auto& l : w.letters()) v *= l.exp > 0 ? rho[l.gen] : conj0(rho[l.gen]);
  return v;
}

}  // namespace

Spectrum enumerate_classes(const std::vector<MoebiusMatrix>& gensIn, const std::vector<Complex>& rhoIn,
                           int maxWordLen, double cutoffLength, const EnumerateOptions& opt) {
  Spectrum out;
  out.cutoffLength = cutoffLength;
  out.latticeCovolume = opt.latticeCovolume;
  out.volume = opt.volume;
  out.maxWordLen = maxWordLen;
  out.complete = opt.complete;
  const std::size_t g = gensIn.size();
  if (g == 0 || maxWordLen <= 0) return out;
  if (!rhoIn.empty() && rhoIn.size() != g) throw ValidationError("one character value per generator required");

  std::vector<MoebiusMatrix> gens, invs;
  for (const auto& m : gensIn) {
    gens.push_back(m.normalized());
    invs.push_back(gens.back().inverse());
  }
  std::vector<Complex> rho = rhoIn.empty() ? std::vector<Complex>(g, Complex(1.0)) : rhoIn;

  // One shard per first letter.
  const std::size_t shards = 2 * g;
  std::vector<std::vector<Candidate>> found(shards);
  parallel_for(shards, [&](std::size_t s) {
    ClassTable table(opt.tolerance);
    const Letter first{static_cast<int>(s / 2), s % 2 == 0 ? 1 : -1};
    std::vector<Letter> letters{first};
    std::vector<MoebiusMatrix> prefix{first.exp > 0 ? gens[first.gen] : invs[first.gen]};
    std::vector<int> choice{0};
    // Depth-first walk over freely reduced words beginning with `first`.
    auto visit = [&] {
      const Letter& last = letters.back();
      if (letters.size() > 1 && last.gen == first.gen && last.exp == -first.exp) return;
      const MoebiusMatrix& m = prefix.back();
      const Classification cl = classify(m);
      if (const auto* lox = std::get_if<Loxodromic>(&cl); lox && lox->length <= cutoffLength + 1e-12) {
        const Complex tr = m.trace();
        GroupWord w(letters);
        const Complex r = word_rho(w, rho);
        table.insert({tr * tr, r, std::move(w)});
      }
    };
    visit();
    while (!letters.empty()) {
      if (static_cast<int>(letters.size()) < maxWordLen && choice.back() < static_cast<int>(2 * g)) {
        const int k = choice.back()++;
        const Letter l{k / 2, k % 2 == 0 ? 1 : -1};
        if (l.gen == letters.back().gen && l.exp == -letters.back().exp) continue;
        letters.push_back(l);
        prefix.push_back(prefix.back() * (l.exp > 0 ? gens[l.gen] : invs[l.gen]));
        choice.push_back(0);
        visit();
      } else {
        letters.pop_back();
        prefix.pop_back();
        choice.pop_back();
      }
    }
    found[s] = table.take();
  });

  ClassTable merged(opt.tolerance);
  for (auto& shard : found)
    for (auto& c : shard) merged.insert(std::move(c));

  std::vector<Unoriented> classes;
  for (auto& c : merged.take()) {
    const Complex lambda = complex_length_from_trace(word_matrix(c.word, gens, invs).trace());
    classes.push_back({lambda, word_rho(c.word, rho), std::move(c.word), 1, lambda.real()});
  }
  std::sort(classes.begin(), classes.end(), [](const Unoriented& x, const Unoriented& y) {
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
    return word_less(x.word, y.word);
  });

  for (std::size_t i = 1; i < classes.size(); ++i) {
    const double d = std::abs(classes[i].lambda - classes[i - 1].lambda);
    if (d > opt.tolerance && d < 1e-6)
      out.warnings.push_back("DiscretenessSuspect: classes " + spectrum_word(classes[i - 1].word) + " and " +
                             spectrum_word(classes[i].word) + " have complex lengths within " +
                             format_double(d));
  }

  // Primitive roots: a class is p^k when its complex length is k times that
  // of a shorter primitive p and the character values agree.
  std::vector<Unoriented> primitives, powers;
  const double ptol = 1e-8;
  for (auto& c : classes) {
    bool is_power = false;
    for (const auto& p : primitives) {
      if (p.lambda.real() > c.lambda.real() / 2.0 + ptol) break;
      const int k = static_cast<int>(std::lround(c.lambda.real() / p.lambda.real()));
      if (k < 2 || std::abs(c.lambda.real() - k * p.lambda.real()) > ptol * k) continue;
      if (std::abs(canonical_angle(c.lambda.imag() - k * p.lambda.imag())) > ptol * k) continue;
      const Complex rk = std::pow(p.rho, k);
      if (std::abs(c.rho - rk) > 1e-9 && std::abs(c.rho - std::conj(rk)) > 1e-9) continue;
      c.multiplicity = k;
      c.primitiveLength = p.lambda.real();
      c.word = p.word.power(k);
      c.rho = rk;
      is_power = true;
      break;
    }
    if (is_power) powers.push_back(std::move(c));
    else primitives.push_back(std::move(c));
  }

  std::vector<Unoriented> all = primitives;
  if (opt.closePowers) {
    for (const auto& p : primitives)
      for (int k = 2; k * p.lambda.real() <= cutoffLength + 1e-12; ++k)
        all.push_back({Complex(k * p.lambda.real(), canonical_angle(k * p.lambda.imag())), std::pow(p.rho, k),
                       p.word.power(k), k, p.lambda.real()});
  } else {
    all.insert(all.end(), powers.begin(), powers.end());
  }

  for (const auto& u : all) {
    const double length = u.multiplicity == 1 ? u.lambda.real() : u.multiplicity * u.primitiveLength;
    const double hol = canonical_angle(u.lambda.imag());
    out.classes.push_back({length, hol, u.rho, u.primitiveLength, u.multiplicity, u.word});
    if (opt.oriented)
      out.classes.push_back({length, hol, conj0(u.rho), u.primitiveLength, u.multiplicity, u.word.inverse()});
  }
  std::sort(out.classes.begin(), out.classes.end(), [](const GeodesicClass& x, const GeodesicClass& y) {
    if (x.length != y.length) return x.length < y.length;
    if (x.holonomy != y.holonomy) return x.holonomy < y.holonomy;
    return word_less(x.word, y.word);
  });
  return out;
}

Spectrum orbit_powers(double length, double holonomy, Complex rho, int kmax) {
  if (!(length > 0) || kmax < 1) throw ValidationError("orbit needs a positive length and kmax >= 1");
  Spectrum out;
  const GroupWord p = GroupWord::generator(0);
  for (int k = 1; k <= kmax; ++k)
    out.classes.push_back({k * length, canonical_angle(k * holonomy), std::pow(rho, k), length, k, p.power(k)});
  out.cutoffLength = kmax * length;
  out.complete = true;
  return out;
}

// ---------------------------------------------------------------- I/O

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_spectrum(const Spectrum& s) {
  std::string out = "# cutoff=" + format_double(s.cutoffLength) + " covolume=" + format_double(s.latticeCovolume) +
                    " volume=" + format_double(s.volume) + "\n";
  out += "# max_word_len=" + std::to_string(s.maxWordLen) + " complete=" + (s.complete ? "1" : "0") + "\n";
  for (const auto& c : s.classes) {
    out += format_double(c.length) + "," + format_double(c.holonomy) + "," + format_double(c.charValue.real()) +
           "," + format_double(c.charValue.imag()) + "," + format_double(c.primitiveLength) + "," +
           std::to_string(c.multiplicity) + "," + spectrum_word(c.word) + "\n";
  }
  return out;
}

namespace {

double parse_field(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(line) + ": expected a number, got '" + s + "'", line);
  }
}

std::map<std::string, std::string> header_fields(const std::string& line) {
  std::map<std::string, std::string> f;
  std::istringstream in(line.substr(1));
  std::string kv;
  while (in >> kv) {
    const auto eq = kv.find('=');
    if (eq != std::string::npos) f[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return f;
}

}  // namespace

Spectrum parse_spectrum(std::string_view text) {
  Spectrum s;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) -> FormatError {
      return FormatError("line " + std::to_string(lineno) + ": " + msg, lineno);
    };
    if (line[0] == '#') {
      auto f = header_fields(line);
      if (f.count("cutoff")) {
        if (!f.count("covolume") || !f.count("volume")) throw fail("header needs cutoff, covolume and volume");
        s.cutoffLength = parse_field(f["cutoff"], lineno);
        s.latticeCovolume = parse_field(f["covolume"], lineno);
        s.volume = parse_field(f["volume"], lineno);
        header = true;
      } else if (f.count("max_word_len")) {
        s.maxWordLen = static_cast<int>(parse_field(f["max_word_len"], lineno));
        s.complete = f.count("complete") && f["complete"] == "1";
      }
      continue;
    }
    if (!header) throw fail("missing '# cutoff=... covolume=... volume=...' header");
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    if (cols.size() != 7) throw fail("expected 7 columns, got " + std::to_string(cols.size()));
    GeodesicClass c;
    c.length = parse_field(cols[0], lineno);
    c.holonomy = parse_field(cols[1], lineno);
    c.charValue = {parse_field(cols[2], lineno), parse_field(cols[3], lineno)};
    c.primitiveLength = parse_field(cols[4], lineno);
    const double m = parse_field(cols[5], lineno);
    if (m < 1 || m != std::floor(m)) throw fail("multiplicity must be a positive integer");
    c.multiplicity = static_cast<int>(m);
    try {
      c.word = parse_spectrum_word(cols[6]);
    } catch (const FormatError& e) {
      throw fail(e.what());
    }
    if (!(c.length > 0) || !(c.primitiveLength > 0)) throw fail("lengths must be positive");
    if (std::abs(c.length - c.multiplicity * c.primitiveLength) > 1e-9)
      throw fail("length differs from multiplicity * primitive_length");
    if (std::abs(std::abs(c.charValue) - 1.0) > 1e-12) throw fail("character value is not of modulus 1");
    if (c.holonomy <= -kPi - 1e-12 || c.holonomy > kPi + 1e-12) throw fail("holonomy outside (-pi, pi]");
    if (c.length > s.cutoffLength + 1e-12) throw fail("length exceeds the cutoff");
    if (!s.classes.empty() && c.length < s.classes.back().length) throw fail("rows not sorted by length");
    s.classes.push_back(std::move(c));
  }
  if (!header) throw FormatError("missing header", lineno);
  return s;
}

Spectrum load_spectrum(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_spectrum(ss.str());
}

void save_spectrum(const Spectrum& s, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << format_spectrum(s);
}

GeneratorData parse_generators(std::string_view text) {
  GeneratorData g;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::string rho_line;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    auto fail = [&](const std::string& msg) {
      return FormatError("line " + std::to_string(lineno) + ": " + msg, lineno);
    };
    if (kw == "gen") {
      double v[8];
      for (double& x : v) {
        std::string tok;
        if (!(ls >> tok)) throw fail("gen needs 8 numbers");
        x = parse_field(tok, lineno);
      }
      g.gens.push_back(MoebiusMatrix{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}});
      if (std::abs(g.gens.back().det() - 1.0) > 1e-12) throw fail("determinant is not 1");
    } else if (kw == "covolume" || kw == "volume") {
      std::string tok;
      if (!(ls >> tok)) throw fail(kw + " needs a value");
      (kw == "covolume" ? g.latticeCovolume : g.volume) = parse_field(tok, lineno);
    } else if (kw == "rho") {
      rho_line = line;
    } else {
      throw fail("unknown directive '" + kw + "'");
    }
  }
  if (rho_line.empty()) {
    g.rho = UnitCharacter::trivial(g.gens.size());
  } else {
    std::string pres = "gens", eps = "eps";
    for (std::size_t i = 0; i < g.gens.size(); ++i) {
      pres += " " + std::string(1, static_cast<char>('a' + i));
      eps += " 1";
    }
    pres += "\n" + eps + "\n" + rho_line + "\n";
    g.rho = parse_presentation(pres).rho;
  }
  return g;
}

}  // namespace cusped
