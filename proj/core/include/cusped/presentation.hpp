#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cusped/cyclotomic.hpp"
#include "cusped/laurent.hpp"

namespace cusped {

struct Letter {
  int gen = 0;  // generator index
  int exp = 1;  // +1 or -1
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the generators. The empty word is the identity.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);  // reduces
  static GroupWord generator(int gen, int exp = 1) { return GroupWord({Letter{gen, exp}}); }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  GroupWord inverse() const;
  GroupWord power(int k) const;
  /// Remove matching first/last letter pairs (conjugation).
  GroupWord cyclically_reduced() const;
  /// Exponent sum of each generator, length `arity`.
  std::vector<long long> exponent_sums(std::size_t arity) const;

  /// Space separated tokens; uppercase-initial token is an inverse letter.
  std::string to_string(const std::vector<std::string>& names) const;

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

struct GroupPresentation {
  std::vector<std::string> generator_names;
  std::vector<GroupWord> relators;
  std::vector<GroupWord> peripheral_words;
  std::optional<double> volume;
  std::vector<std::string> comments;  // comment lines, kept for round trips
  std::string volume_text;            // literal as read, for round trips

  std::size_t arity() const noexcept { return generator_names.size(); }
};

/// Homomorphism to Z given on generators.
struct Epsilon {
  std::vector<long long> values;
  long long operator()(const GroupWord& w) const;
};

/// Rank-one character with values in the n-th roots of unity:
/// generator i maps to zeta_n^{exponents[i]}.
struct UnitCharacter {
  int modulus = 1;
  std::vector<long long> exponents;

  static UnitCharacter trivial(std::size_t arity) { return {1, std::vector<long long>(arity, 0)}; }
  /// Exponent of zeta_n for the image of w, in [0, n).
  long long exponent(const GroupWord& w) const;
  Cyclotomic value(const GroupWord& w) const;
  std::complex<double> value_complex(const GroupWord& w) const;
  bool is_trivial() const;
};

/// Integral group-ring element of the free group.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  static GroupRingElement of(const GroupWord& w, long long coeff = 1);

  const std::map<GroupWord, long long>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add(const GroupWord& w, long long coeff);

  std::string to_string(const std::vector<std::string>& names) const;

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b);
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  std::map<GroupWord, long long> terms_;
};

/// Contents of a presentation file.
struct PresentationFile {
  GroupPresentation presentation;
  Epsilon epsilon;
  UnitCharacter rho;
};

/// Parse the line-oriented presentation grammar:
///
///   # comment
///   gens a b
///   rel a b a B A B
///   peri a
///   eps 1 1
///   rho n=5: 1 1
///   vol 2.029883212819307
///
/// Syntax problems are collected and reported together (SyntaxError);
/// epsilon/rho failures on relators raise ValidationError.
PresentationFile parse_presentation(std::string_view text);
std::string serialize_presentation(const PresentationFile& file);

/// Parse a single word against the given generator names.
GroupWord parse_word(std::string_view text, const std::vector<std::string>& names);

/// Fox free derivative d(w)/d(x_gen).
GroupRingElement fox_derivative(const GroupWord& w, int gen);

/// The ring map w -> rho(w) t^{eps(w)} extended linearly.
LaurentPoly evaluate_twisted(const GroupRingElement& e, const UnitCharacter& rho, const Epsilon& eps);

/// delta_rho: true iff rho is trivial on every peripheral word.
/// Throws ValidationError("MissingPeripheralData") without peripheral words.
bool peripheral_trivial(const GroupPresentation& p, const UnitCharacter& rho);

}  // namespace cusped
