#include <doctest.h>

#include <json.hpp>

#include "cusped/errors.hpp"
#include "cusped/verdict.hpp"
#include "oracles.hpp"

using namespace cusped;

namespace {

PresentationFile load(const char* name) { return parse_presentation(oracle::read_text(oracle::data_path(name))); }

AlexanderData jordan_block() {
  AlexanderData a;
  const LaurentPoly tm1 = LaurentPoly::from_integers(0, {-1, 1});
  a.char0 = LaurentPoly(1);
  a.char1 = tm1 * tm1;
  a.char2 = LaurentPoly(1);
  a.h1 = 1;
  a.h1Divisors = {a.char1};
  finish_alexander_data(a);
  return a;
}

}  // namespace

TEST_CASE("L2 Betti numbers") {
  CHECK(l2_betti(1, 1, true).beta0 == 1);
  CHECK(l2_betti(1, 1, true).beta1 == 0);
  CHECK(l2_betti(0, 2, false).beta1 == 2);
  CHECK(l2_betti(0, 2, true).beta1 == 1);
  for (auto [h0, h1, d] : {std::tuple{1, 0, false}, {2, 0, true}, {-1, 0, true}, {0, -1, false}}) {
    try {
      l2_betti(h0, h1, d);
      FAIL("accepted inconsistent input");
    } catch (const ValidationError& e) {
      CHECK(e.code() == "InconsistentInput");
    }
  }
}

TEST_CASE("Ruelle order predictions") {
  CHECK(ruelle_order_prediction(1, 1, true) == 4);
  CHECK(ruelle_order_prediction(0, 2, false) == -4);
  CHECK(ruelle_order_prediction(0, 3, true) == -4);
  CHECK_THROWS_AS(ruelle_order_prediction(1, 2, false), ValidationError);
}

TEST_CASE("branch formula and Betti route agree exhaustively") {
  int checked = 0;
  for (int h0 : {0, 1})
    for (int h1 = 0; h1 <= 10; ++h1)
      for (bool d : {false, true}) {
        if (h0 == 1 && !d) {
          CHECK_THROWS_AS(ruelle_order_prediction(h0, h1, d), ValidationError);
          continue;
        }
        const L2Betti b = l2_betti(h0, h1, d);
        const int branch = d ? 2 * (2 * h0 - h1 + 1) : -2 * h1;
        CHECK(ruelle_order_prediction(h0, h1, d) == branch);
        CHECK(branch == 2 * (2 * b.beta0 - b.beta1));
        ++checked;
      }
  CHECK(checked == 33);
}

TEST_CASE("figure-eight twisted by a fifth root of unity") {
  const Report r = main_conjecture_report(load("fig8_zeta5.pres"));
  CHECK(r.corollaryBranch == CorollaryBranch::NontrivialRestriction);
  CHECK_FALSE(r.deltaRho);
  CHECK(r.predictedRuelleOrder == -2 * r.h1);
  CHECK(r.alexanderBound == 2 * r.alexanderOrder);
  CHECK(r.inequalityHolds);
  CHECK(r.inequalityHolds == (r.predictedRuelleOrder >= 2 * r.alexanderOrder));
  if (r.equalityExpected) CHECK(r.equalityHolds);
  CHECK(r.exit_code() == 0);
  CHECK(r.warnings.empty());
}

TEST_CASE("figure-eight with trivial coefficients") {
  const Report r = main_conjecture_report(load("fig8.pres"));
  CHECK(r.corollaryBranch == CorollaryBranch::HypothesisNotMet);
  CHECK(r.predictedRuelleOrder == 4);
  CHECK(r.alexanderBound == 4);
  CHECK(r.inequalityHolds);
  CHECK(r.equalityHolds);
  CHECK(r.warnings.size() == 1);
  CHECK(r.exit_code() == 2);
}

TEST_CASE("trefoil twisted by a sixth root of unity") {
  const Report r = main_conjecture_report(load("trefoil_zeta6.pres"));
  CHECK(r.corollaryBranch == CorollaryBranch::NontrivialRestriction);
  CHECK(r.equalityExpected);
  CHECK(r.equalityHolds);
  CHECK(r.predictedRuelleOrder == r.alexanderBound);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("non-semisimple synthetic module") {
  const AlexanderData a = jordan_block();
  const Report r = assemble_report(a, {0, 1}, false);
  CHECK(r.alexanderOrder == -2);
  CHECK(r.predictedRuelleOrder == -2);
  CHECK(r.alexanderBound == -4);
  CHECK(r.inequalityHolds);
  CHECK_FALSE(r.equalityExpected);
  CHECK_FALSE(r.equalityHolds);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("exit codes") {
  AlexanderData a;
  a.char0 = a.char1 = a.char2 = LaurentPoly(1);
  a.ordAtOne = 3;
  Report r = assemble_report(a, {0, 0}, false);
  CHECK_FALSE(r.inequalityHolds);
  CHECK(r.exit_code() == 3);
  a.h0InfinityVanishes = false;
  r = assemble_report(a, {0, 0}, false);
  CHECK(r.exit_code() == 3);
}

TEST_CASE("report JSON") {
  const auto f = load("fig8_zeta5.pres");
  const Report r = main_conjecture_report(f);
  const auto j = nlohmann::ordered_json::parse(to_json(r));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"inputsDigest", "h0", "h1", "deltaRho", "beta0", "beta1",
                                         "predictedRuelleOrder", "ruelleOrderSource", "alexanderOrder",
                                         "alexanderBound", "corollaryBranch", "inequalityHolds",
                                         "equalityExpected", "equalityHolds", "warnings"});
  CHECK(j["corollaryBranch"] == "nontrivialRestriction");
  CHECK(j["inputsDigest"] == digest_hex(serialize_presentation(f)));
  CHECK(j["inputsDigest"].get<std::string>().size() == 16);
  CHECK(to_json(r).find("\n  \"h0\"") != std::string::npos);
}

TEST_CASE("FNV-1a digests") {
  CHECK(digest_hex("") == "cbf29ce484222325");
  CHECK(digest_hex("a") == "af63dc4c8601ec8c");
  CHECK(digest_hex("foobar") == "85944171f73967e8");
}
