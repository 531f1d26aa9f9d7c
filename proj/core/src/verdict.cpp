#include "cusped/verdict.hpp"

#include <cstdint>
#include <cstdio>

#include <json.hpp>

#include "cusped/errors.hpp"

namespace cusped {

L2Betti l2_betti(int h0, int h1, bool deltaRho) {
  if (h0 != 0 && h0 != 1) throw ValidationError("h0 must be 0 or 1", "InconsistentInput");
  if (h1 < 0) throw ValidationError("h1 must be nonnegative", "InconsistentInput");
  if (h0 == 1 && !deltaRho)
    throw ValidationError("a globally trivial character cannot be nontrivial on the cusp", "InconsistentInput");
  return {h0, deltaRho ? h1 - 1 : h1};
}

int ruelle_order_prediction(int h0, int h1, bool deltaRho) {
  const L2Betti b = l2_betti(h0, h1, deltaRho);
  const int order = deltaRho ? 2 * (2 * h0 - h1 + 1) : -2 * h1;
  if (order != 2 * (2 * b.beta0 - b.beta1))
    throw ComputationError("InternalInconsistency", "Betti route and branch formula disagree");
  return order;
}

std::string to_string(CorollaryBranch b) {
  switch (b) {
    case CorollaryBranch::TrivialRestriction: return "trivialRestriction";
    case CorollaryBranch::NontrivialRestriction: return "nontrivialRestriction";
    case CorollaryBranch::HypothesisNotMet: return "hypothesisNotMet";
  }
  return {};
}

int Report::exit_code() const {
  if (!inequalityHolds) return 3;
  return corollaryBranch == CorollaryBranch::HypothesisNotMet ? 2 : 0;
}

Report assemble_report(const AlexanderData& a, const Betti& b, bool deltaRho, std::string digest) {
  Report r;
  r.inputsDigest = std::move(digest);
  r.h0 = b.h0;
  r.h1 = b.h1;
  r.deltaRho = deltaRho;
  const L2Betti l2 = l2_betti(b.h0, b.h1, deltaRho);
  r.beta0 = l2.beta0;
  r.beta1 = l2.beta1;
  r.predictedRuelleOrder = ruelle_order_prediction(b.h0, b.h1, deltaRho);
  r.alexanderOrder = a.ordAtOne;
  r.alexanderBound = deltaRho ? 2 * (1 + a.ordAtOne) : 2 * a.ordAtOne;
  r.corollaryBranch = deltaRho ? CorollaryBranch::TrivialRestriction : CorollaryBranch::NontrivialRestriction;
  if (!a.h0InfinityVanishes) {
    r.corollaryBranch = CorollaryBranch::HypothesisNotMet;
    r.warnings.push_back("H0 of the infinite cyclic cover does not vanish; comparison is informational");
  }
  r.inequalityHolds = r.predictedRuelleOrder >= r.alexanderBound;
  r.equalityExpected = a.semisimpleAtOne;
  r.equalityHolds = r.predictedRuelleOrder == r.alexanderBound;
  if (r.equalityExpected && !r.equalityHolds && r.corollaryBranch != CorollaryBranch::HypothesisNotMet)
    r.warnings.push_back("semisimple at t = 1 but the two sides differ");
  return r;
}

Report main_conjecture_report(const PresentationFile& f) {
  const AlexanderData a = alexander_invariant(f.presentation, f.rho, f.epsilon);
  const Betti b = twisted_betti(f.presentation, f.rho);
  const bool delta = peripheral_trivial(f.presentation, f.rho);
  return assemble_report(a, b, delta, digest_hex(serialize_presentation(f)));
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["inputsDigest"] = r.inputsDigest;
  j["h0"] = r.h0;
  j["h1"] = r.h1;
  j["deltaRho"] = r.deltaRho;
  j["beta0"] = r.beta0;
  j["beta1"] = r.beta1;
  j["predictedRuelleOrder"] = r.predictedRuelleOrder;
  j["ruelleOrderSource"] = "predicted";
  j["alexanderOrder"] = r.alexanderOrder;
  j["alexanderBound"] = r.alexanderBound;
  j["corollaryBranch"] = to_string(r.corollaryBranch);
  j["inequalityHolds"] = r.inequalityHolds;
  j["equalityExpected"] = r.equalityExpected;
  j["equalityHolds"] = r.equalityHolds;
  j["warnings"] = r.warnings;
  return j.dump(2);
}

std::string digest_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cusped
