#include "fuzzydecide/fahp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "fuzzydecide/errors.hpp"

namespace fuzzydecide {

namespace {

// Order-independent sum; lets relabeled criteria produce bitwise-equal totals.
double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::string cell_name(const PairwiseMatrix& m, std::size_t i, std::size_t j) {
  return m.criteria()[i].id + "," + m.criteria()[j].id;
}

bool within_relative(double value, double reference, double tolerance) {
  return std::abs(value - reference) <= tolerance * std::abs(reference);
}

}  // namespace

SaatyFuzzyScale::SaatyFuzzyScale()
    : levels_{{1, 1, 1}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}, {5, 6, 7}, {6, 7, 8}, {7, 8, 9}, {9, 9, 9}} {}

const SaatyFuzzyScale& SaatyFuzzyScale::standard() {
  static const SaatyFuzzyScale scale;
  return scale;
}

const Tfn& SaatyFuzzyScale::level(int k) const {
  if (k < 1 || k > 9) throw ValidationError(fmt::format("Saaty level {} outside 1..9", k));
  return levels_[static_cast<std::size_t>(k - 1)];
}

Tfn SaatyFuzzyScale::reciprocal_level(int k) const { return tfn_reciprocal(level(k)); }

PairwiseMatrix::PairwiseMatrix(std::vector<Barrier> criteria, std::vector<Tfn> cells, ValidationMode mode)
    : criteria_(std::move(criteria)), cells_(std::move(cells)), mode_(mode) {
  if (criteria_.empty()) throw ValidationError("pairwise matrix needs at least one criterion");
  if (cells_.size() != criteria_.size() * criteria_.size()) {
    throw ValidationError(fmt::format("pairwise matrix over {} criteria needs {} cells, got {}", criteria_.size(),
                                      criteria_.size() * criteria_.size(), cells_.size()));
  }
  std::set<std::string> seen;
  for (const auto& c : criteria_) {
    if (!seen.insert(c.id).second) throw ValidationError(fmt::format("duplicate criterion id '{}'", c.id));
  }
}

std::size_t PairwiseMatrix::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < criteria_.size(); ++i) {
    if (criteria_[i].id == id) return i;
  }
  throw ValidationError(fmt::format("unknown criterion id '{}'", id));
}

PairwiseMatrix PairwiseMatrix::reordered(std::span<const std::string> order) const {
  if (order.size() != size()) {
    throw ValidationError(fmt::format("reorder needs {} criteria, got {}", size(), order.size()));
  }
  std::vector<std::size_t> source;
  std::vector<Barrier> criteria;
  for (const auto& id : order) {
    source.push_back(index_of(id));
    criteria.push_back(criteria_[source.back()]);
  }
  std::vector<Tfn> cells;
  cells.reserve(cells_.size());
  for (std::size_t i : source) {
    for (std::size_t j : source) cells.push_back(at(i, j));
  }
  return PairwiseMatrix(std::move(criteria), std::move(cells), mode_);
}

PairwiseMatrix PairwiseMatrix::relabeled(std::vector<Barrier> criteria) const {
  return PairwiseMatrix(std::move(criteria), cells_, mode_);
}

PairwiseMatrix build_matrix(std::span<const MatrixEntry> entries, std::vector<Barrier> criteria,
                            ValidationMode mode) {
  const std::size_t n = criteria.size();
  if (n == 0) throw ValidationError("pairwise matrix needs at least one criterion");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(criteria[i].id, i);

  std::vector<std::optional<Tfn>> cells(n * n);
  for (const auto& e : entries) {
    auto r = index.find(e.row_id);
    if (r == index.end()) throw ValidationError(fmt::format("unknown criterion id '{}'", e.row_id));
    auto c = index.find(e.col_id);
    if (c == index.end()) throw ValidationError(fmt::format("unknown criterion id '{}'", e.col_id));
    auto& slot = cells[r->second * n + c->second];
    if (slot) throw ValidationError(fmt::format("duplicate cell ({},{})", e.row_id, e.col_id));
    slot = e.value;
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& diag = cells[i * n + i];
    if (!diag) diag = Tfn{1, 1, 1};
    for (std::size_t j = 0; j < n; ++j) {
      auto& cell = cells[i * n + j];
      const auto& mirror = cells[j * n + i];
      if (!cell && mirror) {
        try {
          cell = tfn_reciprocal(*mirror);
        } catch (const std::domain_error&) {
          throw ValidationError(fmt::format("cannot fill ({},{}) from non-positive mirror cell {}", criteria[i].id,
                                            criteria[j].id, format_tfn(*mirror)));
        }
      }
    }
  }

  std::vector<Tfn> dense;
  dense.reserve(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!cells[k]) {
      throw ValidationError(
          fmt::format("incomplete matrix: no judgment for ({},{})", criteria[k / n].id, criteria[k % n].id));
    }
    dense.push_back(*cells[k]);
  }
  return PairwiseMatrix(std::move(criteria), std::move(dense), mode);
}

std::vector<Warning> validate_matrix(const PairwiseMatrix& matrix) {
  std::vector<Warning> warnings;
  const bool strict = matrix.mode() == ValidationMode::strict;
  auto report = [&](std::string code, std::string location, std::string message) {
    if (strict) throw ValidationError(fmt::format("cell ({}): {}", location, message));
    warnings.push_back({std::move(code), std::move(location), std::move(message)});
  };

  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Tfn& c = matrix.at(i, j);
      if (!c.is_finite() || !c.is_positive()) {
        throw ValidationError(
            fmt::format("cell ({}): judgments must be finite and > 0, got {}", cell_name(matrix, i, j), format_tfn(c)));
      }
      if (!c.is_monotone()) {
        report("non_monotone", cell_name(matrix, i, j), fmt::format("{} violates l <= m <= u", format_tfn(c)));
      }
      if (i == j && !(std::abs(c.l - 1.0) <= 1e-9 && std::abs(c.m - 1.0) <= 1e-9 && std::abs(c.u - 1.0) <= 1e-9)) {
        report("diagonal", cell_name(matrix, i, j), fmt::format("diagonal cell is {}, expected (1, 1, 1)", format_tfn(c)));
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Tfn expected = tfn_reciprocal(matrix.at(i, j));
      const Tfn& mirror = matrix.at(j, i);
      if (!within_relative(mirror.l, expected.l, kReciprocityTolerance) ||
          !within_relative(mirror.m, expected.m, kReciprocityTolerance) ||
          !within_relative(mirror.u, expected.u, kReciprocityTolerance)) {
        report("reciprocity", cell_name(matrix, i, j) + "|" + cell_name(matrix, j, i),
               fmt::format("({}) = {} but ({}) = {}, expected about {}", cell_name(matrix, i, j),
                           format_tfn(matrix.at(i, j)), cell_name(matrix, j, i), format_tfn(mirror),
                           format_tfn(expected)));
      }
    }
  }
  return warnings;
}

std::vector<Tfn> row_geometric_means(const PairwiseMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<Tfn> out;
  out.reserve(n);
  std::vector<double> ls(n), ms(n), us(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = matrix.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      ls[j] = row[j].l;
      ms[j] = row[j].m;
      us[j] = row[j].u;
    }
    out.push_back({geometric_mean(ls), geometric_mean(ms), geometric_mean(us)});
  }
  return out;
}

FuzzyWeights fuzzy_weights(std::span<const Tfn> row_means) {
  if (row_means.empty()) throw std::invalid_argument("fuzzy_weights: no criteria");
  std::vector<double> ls, ms, us;
  for (const auto& r : row_means) {
    ls.push_back(r.l);
    ms.push_back(r.m);
    us.push_back(r.u);
  }
  FuzzyWeights out;
  out.total = {sorted_sum(ls), sorted_sum(ms), sorted_sum(us)};
  out.inverse = tfn_total_inverse(out.total);
  out.weights.reserve(row_means.size());
  for (const auto& r : row_means) out.weights.push_back(tfn_multiply(r, out.inverse));
  return out;
}

CrispWeights crisp_weights(std::span<const Tfn> weights) {
  if (weights.empty()) throw std::invalid_argument("crisp_weights: no criteria");
  CrispWeights out;
  out.averaged.reserve(weights.size());
  for (const auto& w : weights) out.averaged.push_back(centroid_defuzzify(w));
  const double sum = sorted_sum(out.averaged);
  if (!(sum > 0.0) || !std::isfinite(sum)) throw std::domain_error("crisp_weights: averaged weights sum to zero");
  out.normalized.reserve(weights.size());
  for (double m : out.averaged) out.normalized.push_back(m / sum);
  return out;
}

std::vector<int> rank(std::span<const double> weights) {
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  std::vector<int> ranks(weights.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<int>(pos) + 1;
  return ranks;
}

std::vector<Barrier> RankingResult::order() const {
  std::vector<const CriterionRanking*> sorted;
  for (const auto& row : rows) sorted.push_back(&row);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->rank < b->rank; });
  std::vector<Barrier> out;
  for (const auto* row : sorted) out.push_back(row->criterion);
  return out;
}

RankingResult run_fahp(const PairwiseMatrix& matrix) {
  RankingResult result;
  result.warnings = validate_matrix(matrix);

  const auto means = row_geometric_means(matrix);
  const auto fuzzy = fuzzy_weights(means);
  const auto crisp = crisp_weights(fuzzy.weights);
  const auto ranks = rank(crisp.normalized);

  result.total = fuzzy.total;
  result.inverse = fuzzy.inverse;
  result.rows.reserve(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    result.rows.push_back({matrix.criteria()[i], means[i], fuzzy.weights[i], crisp.averaged[i],
                           crisp.normalized[i], ranks[i]});
  }
  return result;
}

}  // namespace fuzzydecide
