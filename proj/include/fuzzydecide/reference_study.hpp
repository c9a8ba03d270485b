#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzydecide/delphi.hpp"
#include "fuzzydecide/fahp.hpp"

namespace fuzzydecide {

// Embedded case study: 16 candidate barriers rated by 4 experts, screened
// down to 11 criteria which are then ranked from an aggregated 11x11 fuzzy
// comparison matrix. Expected values are the published digits, kept as
// oracles rather than recomputed.

struct ExpectedScreeningRow {
  std::string id;
  double score = 0.0;
  bool selected = false;
};

struct ExpectedScreening {
  double threshold_low = 0.0;
  double threshold_high = 0.0;
  std::vector<ExpectedScreeningRow> rows;
};

struct ExpectedRanking {
  std::vector<Tfn> row_means;
  Tfn total;
  /// Published inverse-total row, stored in the printed (u, m, l) order.
  Tfn p_inverse_printed;
  /// Published multiplier row actually applied to (l, m, u) of each row mean.
  Tfn applied_multiplier;
  std::vector<Tfn> fuzzy_weights;
  std::vector<double> averaged;
  double averaged_total = 0.0;
  std::vector<double> normalized;
  std::vector<int> ranks;
};

struct RenumberEntry {
  std::string from;
  std::string to;
};

using RenumberMap = std::vector<RenumberEntry>;

struct Annotation {
  std::string kind;
  std::string location;
  std::string note;
};

struct ReferenceStudy {
  std::string title;
  RatingPanel delphi_panel;
  ExpectedScreening delphi_expected;
  PairwiseMatrix fahp_matrix;
  ExpectedRanking fahp_expected;
  RenumberMap renumber_map;
  bool renumber_inferred = false;
  std::vector<Annotation> annotations;
};

/// Raw JSON text of the embedded study and its recorded SHA-256.
std::string_view embedded_study_text();
std::string_view embedded_study_digest();

/// Loads the embedded study after verifying its checksum; throws
/// CorruptResourceError on mismatch.
ReferenceStudy load_reference_study();

/// Parses a study document. When `expected_sha256` is non-empty the text is
/// checked against it first.
ReferenceStudy parse_reference_study(std::string_view json_text, std::string_view expected_sha256 = {});

/// Selected barriers relabeled through `map`, in screening order. The map's
/// source ids must match the selected set exactly.
std::vector<Barrier> renumber_selected(const ScreeningResult& screening, const RenumberMap& map);

/// Selected barriers paired with positional ids from `targets`.
RenumberMap positional_renumber_map(const ScreeningResult& screening, const std::vector<Barrier>& targets);

}  // namespace fuzzydecide
