#pragma once

#include <complex>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cusped/presentation.hpp"

namespace cusped {

using Complex = std::complex<double>;

/// Representative of an element of PSL2(C).
struct MoebiusMatrix {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  /// Rescale so that det = 1. Throws ValidationError for det = 0.
  MoebiusMatrix normalized() const;
  MoebiusMatrix inverse() const { return {d, -b, -c, a}; }
  friend MoebiusMatrix operator*(const MoebiusMatrix& x, const MoebiusMatrix& y);
};

struct Loxodromic {
  double length = 0.0;
  double holonomy = 0.0;  // in (-pi, pi]
};
struct Parabolic {};
struct Elliptic {};
struct Identity {};
using Classification = std::variant<Loxodromic, Parabolic, Elliptic, Identity>;

Classification classify(const MoebiusMatrix& m);

/// Complex length l + i theta with theta in (-pi, pi], from a trace.
Complex complex_length_from_trace(Complex trace);
/// Angle reduced to (-pi, pi].
double canonical_angle(double theta);

struct GeodesicClass {
  double length = 0.0;
  double holonomy = 0.0;
  Complex charValue{1.0};
  double primitiveLength = 0.0;
  int multiplicity = 1;
  GroupWord word;
};

struct Spectrum {
  std::vector<GeodesicClass> classes;
  double cutoffLength = std::numeric_limits<double>::infinity();
  double latticeCovolume = 1.0;
  double volume = 1.0;
  int maxWordLen = 0;     // 0 when unknown
  bool complete = false;  // every class up to cutoffLength is present
  std::vector<std::string> warnings;
};

/// Euler products run over oriented geodesics: a class and its inverse
/// are listed separately.
inline constexpr bool kOrientedGeodesics = true;

struct EnumerateOptions {
  bool oriented = kOrientedGeodesics;
  /// Add p^k for every primitive p with k l(p) <= cutoff, even when the
  /// word p^k is longer than maxWordLen.
  bool closePowers = true;
  double tolerance = 1e-9;
  bool complete = false;
  double latticeCovolume = 1.0;
  double volume = 1.0;
};

/// Enumerate cyclically reduced words up to maxWordLen over the generators
/// and their inverses, keep loxodromic classes with length <= cutoff, and
/// deduplicate conjugacy classes by trace (up to sign) and character value
/// (up to conjugation). Deterministic regardless of worker count.
Spectrum enumerate_classes(const std::vector<MoebiusMatrix>& gens, const std::vector<Complex>& rhoValues,
                           int maxWordLen, double cutoffLength, const EnumerateOptions& options = {});

/// A single primitive class of complex length length + i holonomy and its
/// powers up to kmax, flagged complete. Word is "a".
Spectrum orbit_powers(double length, double holonomy, Complex rho, int kmax);

/// Spectrum words use a, b, c, ... with uppercase inverses, no separators.
std::string spectrum_word(const GroupWord& w);
GroupWord parse_spectrum_word(std::string_view s);

std::string format_spectrum(const Spectrum& s);
/// Throws FormatError with the offending line number.
Spectrum parse_spectrum(std::string_view text);
Spectrum load_spectrum(const std::string& path);
void save_spectrum(const Spectrum& s, const std::string& path);

/// Matrix generators file:
///
///   covolume 3.4641016151377544
///   volume 2.029883212819307
///   gen <a.re> <a.im> <b.re> <b.im> <c.re> <c.im> <d.re> <d.im>
///   rho n=5: 1 1
struct GeneratorData {
  std::vector<MoebiusMatrix> gens;
  UnitCharacter rho;
  double latticeCovolume = 1.0;
  double volume = 1.0;
};
GeneratorData parse_generators(std::string_view text);

/// Shared 17 significant digit formatting.
std::string format_double(double x);

}  // namespace cusped
