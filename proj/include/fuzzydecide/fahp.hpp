#pragma once

#include <span>
#include <string>
#include <vector>

#include "fuzzydecide/delphi.hpp"
#include "fuzzydecide/fuzzy_number.hpp"

namespace fuzzydecide {

/// Fuzzified 1-9 importance scale.
class SaatyFuzzyScale {
 public:
  static const SaatyFuzzyScale& standard();

  /// Level k in 1..9.
  const Tfn& level(int k) const;
  /// tfn_reciprocal(level(k)), i.e. the judgment "1/k".
  Tfn reciprocal_level(int k) const;

 private:
  SaatyFuzzyScale();
  std::vector<Tfn> levels_;
};

/// Cells are reciprocal pairs within this relative tolerance on every component.
inline constexpr double kReciprocityTolerance = 0.05;

/// Square matrix of fuzzy pairwise judgments over an ordered criteria list.
class PairwiseMatrix {
 public:
  /// `cells` is row-major, criteria.size()^2 entries. No validation here;
  /// see validate_matrix.
  PairwiseMatrix(std::vector<Barrier> criteria, std::vector<Tfn> cells, ValidationMode mode);

  std::size_t size() const { return criteria_.size(); }
  const std::vector<Barrier>& criteria() const { return criteria_; }
  ValidationMode mode() const { return mode_; }
  const Tfn& at(std::size_t row, std::size_t col) const { return cells_[row * size() + col]; }
  std::span<const Tfn> row(std::size_t r) const { return std::span<const Tfn>(cells_).subspan(r * size(), size()); }
  const std::vector<Tfn>& cells() const { return cells_; }

  /// Index of the criterion with `id`; throws ValidationError when absent.
  std::size_t index_of(const std::string& id) const;

  /// Same judgments with rows and columns permuted into `order` (criterion ids).
  PairwiseMatrix reordered(std::span<const std::string> order) const;
  /// Same judgments under new criterion labels (positional).
  PairwiseMatrix relabeled(std::vector<Barrier> criteria) const;

 private:
  std::vector<Barrier> criteria_;
  std::vector<Tfn> cells_;
  ValidationMode mode_;
};

struct MatrixEntry {
  std::string row_id;
  std::string col_id;
  Tfn value;
};

/// Fills the diagonal with (1,1,1) and each missing mirror cell with the
/// reciprocal of its supplied partner. Supplied cells are never overwritten.
PairwiseMatrix build_matrix(std::span<const MatrixEntry> entries, std::vector<Barrier> criteria,
                            ValidationMode mode);

/// Strict mode throws ValidationError at the first violation; lenient mode
/// returns one warning per violated cell or reciprocal pair. Non-finite or
/// non-positive cells are rejected in both modes.
std::vector<Warning> validate_matrix(const PairwiseMatrix& matrix);

/// Componentwise geometric mean of every row.
std::vector<Tfn> row_geometric_means(const PairwiseMatrix& matrix);

struct FuzzyWeights {
  std::vector<Tfn> weights;
  Tfn total;
  Tfn inverse;
};

/// w_i = r_i (x) (1/u_total, 1/m_total, 1/l_total).
FuzzyWeights fuzzy_weights(std::span<const Tfn> row_means);

struct CrispWeights {
  std::vector<double> averaged;    // centroid of each fuzzy weight
  std::vector<double> normalized;  // averaged / sum(averaged)
};

CrispWeights crisp_weights(std::span<const Tfn> weights);

/// 1-based ranks by descending weight; ties go to the lower index.
std::vector<int> rank(std::span<const double> weights);

struct CriterionRanking {
  Barrier criterion;
  Tfn row_mean;
  Tfn fuzzy_weight;
  double averaged_weight = 0.0;
  double normalized_weight = 0.0;
  int rank = 0;
};

struct RankingResult {
  std::vector<CriterionRanking> rows;
  Tfn total;
  Tfn inverse;
  std::vector<Warning> warnings;

  /// Criteria sorted by rank.
  std::vector<Barrier> order() const;
};

RankingResult run_fahp(const PairwiseMatrix& matrix);

}  // namespace fuzzydecide
