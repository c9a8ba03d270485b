#pragma once

#include <string>
#include <vector>

#include "fuzzydecide/delphi.hpp"
#include "fuzzydecide/fahp.hpp"
#include "fuzzydecide/reference_study.hpp"

namespace fuzzydecide {

// Regression tolerances against the published digits.
inline constexpr double kScoreTolerance = 0.01;
inline constexpr double kRowMeanTolerance = 0.005;
inline constexpr double kTotalTolerance = 0.005;
inline constexpr double kInverseTolerance = 0.0005;
inline constexpr double kWeightTolerance = 0.002;
inline constexpr double kWeightSumTolerance = 1e-9;

struct Check {
  std::string name;
  bool passed = false;
  std::string expected;
  std::string actual;
  std::string tolerance;
};

struct Anomaly {
  std::string kind;
  std::string location;
  std::string detail;
  std::string source;  // "dataset", "validator" or "recomputed"
};

struct VerificationReport {
  std::vector<Check> checks;
  std::vector<Anomaly> anomalies;
  ScreeningResult screening;
  RankingResult ranking;

  bool passed() const;
  std::vector<const Check*> failures() const;
};

/// Runs both stages on the study and compares every stage output with the
/// stored expectations. Known anomalies are reported, not failed.
VerificationReport verify_reference_study(const ReferenceStudy& study);

std::string verification_to_text(const VerificationReport& report);
std::string verification_to_json(const VerificationReport& report);

}  // namespace fuzzydecide
