#pragma once

#include <string>
#include <vector>

#include "cusped/alexander.hpp"
#include "cusped/presentation.hpp"

namespace cusped {

struct L2Betti {
  int beta0 = 0;
  int beta1 = 0;
};

/// Throws ValidationError("InconsistentInput") for h0 = 1 with a
/// peripherally nontrivial character, or h0 outside {0, 1}.
L2Betti l2_betti(int h0, int h1, bool deltaRho);

/// Order of the Ruelle function at z = 0 from the topological formula.
int ruelle_order_prediction(int h0, int h1, bool deltaRho);

enum class CorollaryBranch { TrivialRestriction, NontrivialRestriction, HypothesisNotMet };
std::string to_string(CorollaryBranch b);

struct Report {
  std::string inputsDigest;
  int h0 = 0;
  int h1 = 0;
  bool deltaRho = false;
  int beta0 = 0;
  int beta1 = 0;
  int predictedRuelleOrder = 0;
  int alexanderOrder = 0;
  int alexanderBound = 0;  // 2 ord or 2 (1 + ord), depending on deltaRho
  CorollaryBranch corollaryBranch = CorollaryBranch::NontrivialRestriction;
  bool inequalityHolds = false;
  bool equalityExpected = false;
  bool equalityHolds = false;
  std::vector<std::string> warnings;

  /// 0 when the inequality holds, 3 when it fails, 2 when the hypothesis
  /// is not met but both sides still agree.
  int exit_code() const;
};

/// Build the report from already computed invariants.
Report assemble_report(const AlexanderData& a, const Betti& b, bool deltaRho, std::string digest = {});

Report main_conjecture_report(const PresentationFile& f);

/// Fixed field order, two-space indent.
std::string to_json(const Report& r);

/// FNV-1a, 16 hex digits.
std::string digest_hex(const std::string& text);

}  // namespace cusped
