#include "fuzzydecide/delphi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "fuzzydecide/errors.hpp"

namespace fuzzydecide {

LinguisticScale::LinguisticScale(std::string name, std::map<int, Tfn> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError(fmt::format("scale '{}' has no entries", name_));
  int expected = 1;
  for (const auto& [rating, tfn] : entries_) {
    if (rating != expected) {
      throw ValidationError(fmt::format("scale '{}': ratings must be contiguous from 1, found {}", name_, rating));
    }
    ++expected;
    std::vector<Warning> ignored;
    check_input_tfn(tfn, ValidationMode::strict, fmt::format("scale '{}' rating {}", name_, rating), ignored);
  }
}

const LinguisticScale& LinguisticScale::delphi10() {
  static const LinguisticScale scale("delphi-10", {{1, {0, 0, 1}},
                                                   {2, {1, 2, 3}},
                                                   {3, {2, 3, 4}},
                                                   {4, {3, 4, 5}},
                                                   {5, {4, 5, 6}},
                                                   {6, {5, 6, 7}},
                                                   {7, {6, 7, 8}},
                                                   {8, {7, 8, 9}},
                                                   {9, {8, 9, 10}},
                                                   {10, {10, 10, 10}}});
  return scale;
}

const LinguisticScale& LinguisticScale::builtin(const std::string& name) {
  if (name == delphi10().name()) return delphi10();
  throw ValidationError(fmt::format("unknown linguistic scale '{}' (available: delphi-10)", name));
}

Tfn encode_rating(const LinguisticScale& scale, int rating) {
  auto it = scale.entries().find(rating);
  if (it == scale.entries().end()) {
    throw ValidationError(
        fmt::format("rating {} is not defined on scale '{}' (1..{})", rating, scale.name(), scale.size()));
  }
  return it->second;
}

RatingPanel::RatingPanel(std::vector<Barrier> barriers, std::vector<std::string> experts, std::vector<Tfn> ratings,
                         ValidationMode mode)
    : barriers_(std::move(barriers)), experts_(std::move(experts)), ratings_(std::move(ratings)), mode_(mode) {
  if (barriers_.empty()) throw ValidationError("rating panel needs at least one barrier");
  if (experts_.empty()) throw ValidationError("rating panel needs at least one expert");
  if (ratings_.size() != barriers_.size() * experts_.size()) {
    throw ValidationError(fmt::format("rating panel expects {} cells, got {}", barriers_.size() * experts_.size(),
                                      ratings_.size()));
  }

  std::set<std::string> seen;
  for (const auto& b : barriers_) {
    if (b.id.empty()) throw ValidationError("barrier id must not be empty");
    if (!seen.insert(b.id).second) throw ValidationError(fmt::format("duplicate barrier id '{}'", b.id));
  }
  seen.clear();
  for (const auto& e : experts_) {
    if (!seen.insert(e).second) throw ValidationError(fmt::format("duplicate expert id '{}'", e));
  }

  for (std::size_t b = 0; b < barriers_.size(); ++b) {
    for (std::size_t e = 0; e < experts_.size(); ++e) {
      check_input_tfn(rating(b, e), mode_, barriers_[b].id + "," + experts_[e], warnings_);
    }
  }
}

RatingPanel RatingPanel::from_records(std::vector<Barrier> barriers, std::optional<std::vector<std::string>> experts,
                                      std::span<const RatingRecord> records, ValidationMode mode) {
  std::unordered_map<std::string, std::size_t> barrier_index;
  if (barriers.empty()) {
    for (const auto& r : records) {
      if (!barrier_index.contains(r.barrier_id)) {
        barrier_index.emplace(r.barrier_id, barriers.size());
        barriers.push_back({r.barrier_id, r.barrier_id, ""});
      }
    }
  } else {
    for (std::size_t i = 0; i < barriers.size(); ++i) barrier_index.emplace(barriers[i].id, i);
  }

  std::vector<std::string> expert_list;
  std::unordered_map<std::string, std::size_t> expert_index;
  if (experts) {
    expert_list = std::move(*experts);
    for (std::size_t i = 0; i < expert_list.size(); ++i) expert_index.emplace(expert_list[i], i);
  } else {
    for (const auto& r : records) {
      if (!expert_index.contains(r.expert_id)) {
        expert_index.emplace(r.expert_id, expert_list.size());
        expert_list.push_back(r.expert_id);
      }
    }
  }

  const std::size_t cells = barriers.size() * expert_list.size();
  std::vector<Tfn> grid(cells);
  std::vector<bool> filled(cells, false);
  for (const auto& r : records) {
    auto bi = barrier_index.find(r.barrier_id);
    if (bi == barrier_index.end()) throw ValidationError(fmt::format("unknown barrier id '{}'", r.barrier_id));
    auto ei = expert_index.find(r.expert_id);
    if (ei == expert_index.end()) throw ValidationError(fmt::format("unknown expert id '{}'", r.expert_id));
    const std::size_t cell = bi->second * expert_list.size() + ei->second;
    if (filled[cell]) {
      throw ValidationError(fmt::format("duplicate rating for barrier '{}', expert '{}'", r.barrier_id, r.expert_id));
    }
    grid[cell] = r.rating;
    filled[cell] = true;
  }
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (!filled[cell]) {
      throw ValidationError(fmt::format("missing rating for barrier '{}', expert '{}'",
                                        barriers[cell / expert_list.size()].id,
                                        expert_list[cell % expert_list.size()]));
    }
  }
  return RatingPanel(std::move(barriers), std::move(expert_list), std::move(grid), mode);
}

ThresholdStrategy ThresholdStrategy::parse(const std::string& text) {
  if (text == "mean") return mean();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ValidationError(fmt::format("threshold must be 'mean' or a finite number, got '{}'", text));
  }
  return fixed(v);
}

std::string ThresholdStrategy::describe() const {
  return kind == Kind::mean ? std::string("mean") : fmt::format("fixed({:g})", value);
}

std::vector<Barrier> ScreeningResult::selected() const {
  std::vector<Barrier> out;
  for (const auto& row : rows) {
    if (row.selected) out.push_back(row.barrier);
  }
  return out;
}

std::vector<Barrier> ScreeningResult::rejected() const {
  std::vector<Barrier> out;
  for (const auto& row : rows) {
    if (!row.selected) out.push_back(row.barrier);
  }
  return out;
}

std::vector<Tfn> aggregate_panel(const RatingPanel& panel) {
  std::vector<Tfn> out;
  out.reserve(panel.barrier_count());
  for (std::size_t b = 0; b < panel.barrier_count(); ++b) {
    out.push_back(aggregate_min_geo_max(panel.barrier_ratings(b)));
  }
  return out;
}

std::vector<double> score_barriers(std::span<const Tfn> aggregates) {
  std::vector<double> out;
  out.reserve(aggregates.size());
  for (const auto& a : aggregates) out.push_back(centroid_defuzzify(a));
  return out;
}

double compute_threshold(std::span<const double> scores, const ThresholdStrategy& strategy) {
  if (scores.empty()) throw std::invalid_argument("compute_threshold: no scores");
  if (strategy.kind == ThresholdStrategy::Kind::fixed) {
    if (!std::isfinite(strategy.value)) throw std::invalid_argument("compute_threshold: fixed value must be finite");
    return strategy.value;
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  return std::clamp(mean, sorted.front(), sorted.back());
}

ScreeningResult screen(const RatingPanel& panel, const ThresholdStrategy& strategy) {
  const auto aggregates = aggregate_panel(panel);
  const auto scores = score_barriers(aggregates);

  ScreeningResult result;
  result.threshold = compute_threshold(scores, strategy);
  result.strategy = strategy;
  result.warnings = panel.warnings();
  result.rows.reserve(panel.barrier_count());
  for (std::size_t b = 0; b < panel.barrier_count(); ++b) {
    result.rows.push_back({panel.barriers()[b], aggregates[b], scores[b], scores[b] >= result.threshold});
  }
  return result;
}

}  // namespace fuzzydecide
