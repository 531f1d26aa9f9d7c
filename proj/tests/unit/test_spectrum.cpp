#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <random>
#include <set>

#include "cusped/errors.hpp"
#include "cusped/spectrum.hpp"
#include "oracles.hpp"

using namespace cusped;

namespace {

GeneratorData fig8_gens(const char* name = "fig8.gens") {
  return parse_generators(oracle::read_text(oracle::data_path(name)));
}

std::vector<Complex> rho_values(const GeneratorData& g) {
  std::vector<Complex> v;
  for (std::size_t i = 0; i < g.gens.size(); ++i) v.push_back(g.rho.value_complex(GroupWord::generator(static_cast<int>(i))));
  return v;
}

MoebiusMatrix random_sl2(std::mt19937& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  MoebiusMatrix m{{d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}};
  return m.normalized();
}

}  // namespace

TEST_CASE("classification by trace") {
  const double h = std::exp(0.5);
  const auto lox = std::get<Loxodromic>(classify({h, 0.0, 0.0, 1.0 / h}));
  CHECK(lox.length == doctest::Approx(1.0));
  CHECK(lox.holonomy == doctest::Approx(0.0));
  CHECK(std::holds_alternative<Parabolic>(classify({1.0, 1.0, 0.0, 1.0})));
  CHECK(std::holds_alternative<Elliptic>(classify({0.0, -1.0, 1.0, 0.0})));
  CHECK(std::holds_alternative<Identity>(classify({})));
  const auto g = fig8_gens();
  const MoebiusMatrix a = g.gens[0], b = g.gens[1];
  const auto c = std::get<Loxodromic>(classify(a * b * a.inverse() * b.inverse()));
  CHECK(c.length == doctest::Approx(1.0870701449957392).epsilon(1e-12));
}

TEST_CASE("classification is conjugation invariant and lengths scale under powers") {
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    const MoebiusMatrix g = random_sl2(rng), h = random_sl2(rng);
    const Classification cg = classify(g);
    const auto* l = std::get_if<Loxodromic>(&cg);
    if (!l) continue;
    const auto conj = classify(h * g * h.inverse());
    const auto& lc = std::get<Loxodromic>(conj);
    CHECK(lc.length == doctest::Approx(l->length).epsilon(1e-9));
    CHECK(std::abs(std::remainder(lc.holonomy - l->holonomy, 2 * M_PI)) < 1e-8);
    MoebiusMatrix p = g;
    for (int k = 2; k <= 4; ++k) {
      p = p * g;
      const auto lk = std::get<Loxodromic>(classify(p));
      CHECK(std::abs(lk.length - k * l->length) < 1e-9 * k);
      CHECK(std::abs(std::remainder(lk.holonomy - k * l->holonomy, 2 * M_PI)) < 1e-8);
    }
  }
}

TEST_CASE("trivial enumerations") {
  CHECK(enumerate_classes({}, {}, 5, 3.0).classes.empty());
  const double h = std::exp(0.5);
  EnumerateOptions o;
  o.oriented = false;
  o.closePowers = false;
  const auto s = enumerate_classes({{h, 0.0, 0.0, 1.0 / h}}, {}, 5, 10.0, o);
  REQUIRE(s.classes.size() == 5);
  for (int k = 1; k <= 5; ++k) {
    CHECK(s.classes[k - 1].multiplicity == k);
    CHECK(s.classes[k - 1].primitiveLength == doctest::Approx(1.0));
    CHECK(s.classes[k - 1].length == doctest::Approx(k));
  }
}

TEST_CASE("figure-eight enumeration") {
  const auto g = fig8_gens();
  const auto s = enumerate_classes(g.gens, rho_values(g), 8, 3.0);
  REQUIRE(!s.classes.empty());
  CHECK(s.classes.front().length == doctest::Approx(1.0870701449957392).epsilon(1e-12));
  int shortest = 0;
  for (const auto& c : s.classes)
    if (std::abs(c.length - s.classes.front().length) < 1e-9) ++shortest;
  CHECK(shortest == 4);
  CHECK(s.classes.size() == 32);
  for (std::size_t i = 1; i < s.classes.size(); ++i) CHECK(s.classes[i - 1].length <= s.classes[i].length);
  for (const auto& c : s.classes) {
    CHECK(c.length <= 3.0);
    CHECK(std::abs(c.length - c.multiplicity * c.primitiveLength) < 1e-9);
  }
}

TEST_CASE("figure-eight lengths agree with a brute-force eigenvalue oracle") {
  const auto g = fig8_gens();
  EnumerateOptions o;
  o.closePowers = false;
  const auto s = enumerate_classes(g.gens, rho_values(g), 8, 3.0, o);
  std::set<std::pair<long long, long long>> ours;
  for (const auto& c : s.classes)
    ours.insert({std::llround(c.length * 1e8), std::llround(std::abs(c.holonomy) * 1e8)});
  std::set<std::pair<long long, long long>> theirs;
  for (const auto& [l, h] : oracle::eigenvalue_spectrum(g.gens, 8, 3.0))
    theirs.insert({std::llround(l * 1e8), std::llround(h * 1e8)});
  CHECK(ours == theirs);
}

TEST_CASE("character values are multiplicative and trivial on relators") {
  const auto g = fig8_gens("fig8_zeta5.gens");
  const auto s = enumerate_classes(g.gens, rho_values(g), 8, 3.0);
  for (const auto& c : s.classes) {
    CHECK(std::abs(std::abs(c.charValue) - 1.0) < 1e-12);
    CHECK(std::abs(c.charValue - g.rho.value_complex(c.word)) < 1e-12);
  }
}

TEST_CASE("enumeration is independent of the worker count") {
  const auto g = fig8_gens("fig8_zeta5.gens");
  setenv("CUSPED_ZETA_THREADS", "1", 1);
  const std::string one = format_spectrum(enumerate_classes(g.gens, rho_values(g), 8, 3.0));
  setenv("CUSPED_ZETA_THREADS", "7", 1);
  const std::string seven = format_spectrum(enumerate_classes(g.gens, rho_values(g), 8, 3.0));
  unsetenv("CUSPED_ZETA_THREADS");
  CHECK(one == seven);
}

TEST_CASE("spectrum CSV round trip and frozen fixture") {
  const std::string text = oracle::read_text(oracle::data_path("fig8_cutoff3.csv"));
  const Spectrum s = parse_spectrum(text);
  CHECK(format_spectrum(s) == text);
  CHECK(s.maxWordLen == 8);
  CHECK_FALSE(s.complete);
  const auto g = fig8_gens();
  CHECK(format_spectrum(enumerate_classes(g.gens, rho_values(g), 8, 3.0,
                                          {.latticeCovolume = g.latticeCovolume, .volume = g.volume})) == text);

  const std::string path = "spectrum_roundtrip.csv";
  save_spectrum(s, path);
  CHECK(oracle::read_text(path) == text);
  CHECK(format_spectrum(load_spectrum(path)) == text);
  std::remove(path.c_str());
}

TEST_CASE("malformed spectrum files name the line") {
  const std::string head = "# cutoff=3 covolume=1 volume=1\n# max_word_len=2 complete=0\n";
  auto line_of = [](const std::string& t) {
    try {
      parse_spectrum(t);
    } catch (const FormatError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of(head + "1,0,1,0,1,1,a\n2.5,0,1,0,1,2,aa\n") == 4);
  CHECK(line_of(head + "1,0,1,0,1,1\n") == 3);
  CHECK(line_of(head + "1,0,2,0,1,1,a\n") == 3);
  CHECK(line_of(head + "1,0,1,0,1,1,a!\n") == 3);
  CHECK(line_of("1,0,1,0,1,1,a\n") == 1);
}

TEST_CASE("spectrum words") {
  const GroupWord w = parse_spectrum_word("abAB");
  CHECK(spectrum_word(w) == "abAB");
  CHECK(w.size() == 4);
  CHECK_THROWS_AS(parse_spectrum_word("a-b"), FormatError);
}

TEST_CASE("generator file validation") {
  CHECK_THROWS_AS(parse_generators("gen 1 0 0 0 0 0 0 0\n"), FormatError);
  CHECK_THROWS_AS(parse_generators("gen 1 0 1\n"), FormatError);
  CHECK_THROWS_AS(parse_generators("mat 1\n"), FormatError);
  const auto g = fig8_gens();
  CHECK(g.gens.size() == 2);
  CHECK(g.latticeCovolume == doctest::Approx(2 * std::sqrt(3.0)));
}
