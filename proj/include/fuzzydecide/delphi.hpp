#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzydecide/fuzzy_number.hpp"

namespace fuzzydecide {

struct Barrier {
  std::string id;
  std::string name;
  std::string description;

  friend bool operator==(const Barrier&, const Barrier&) = default;
};

/// Maps integer ratings 1..N to triangular numbers.
class LinguisticScale {
 public:
  LinguisticScale(std::string name, std::map<int, Tfn> entries);

  /// Ten-point expert rating scale: 1 -> (0,0,1) ... 9 -> (8,9,10), 10 -> (10,10,10).
  static const LinguisticScale& delphi10();

  /// Looks up a built-in scale by name; throws ValidationError if unknown.
  static const LinguisticScale& builtin(const std::string& name);

  const std::string& name() const { return name_; }
  const std::map<int, Tfn>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::string name_;
  std::map<int, Tfn> entries_;
};

Tfn encode_rating(const LinguisticScale& scale, int rating);

/// One (barrier, expert) cell as it arrives from an input file.
struct RatingRecord {
  std::string barrier_id;
  std::string expert_id;
  Tfn rating;
};

/// Barriers x experts grid of fuzzy ratings. Always complete and validated.
class RatingPanel {
 public:
  /// `ratings` is barrier-major: ratings[b * experts.size() + e].
  RatingPanel(std::vector<Barrier> barriers, std::vector<std::string> experts, std::vector<Tfn> ratings,
              ValidationMode mode = ValidationMode::strict);

  /// Assembles a panel from loose records. Barrier order is `barriers`;
  /// expert order is `experts` when given, otherwise first appearance.
  static RatingPanel from_records(std::vector<Barrier> barriers, std::optional<std::vector<std::string>> experts,
                                  std::span<const RatingRecord> records, ValidationMode mode);

  const std::vector<Barrier>& barriers() const { return barriers_; }
  const std::vector<std::string>& experts() const { return experts_; }
  std::size_t barrier_count() const { return barriers_.size(); }
  std::size_t expert_count() const { return experts_.size(); }
  ValidationMode mode() const { return mode_; }
  const std::vector<Warning>& warnings() const { return warnings_; }

  const Tfn& rating(std::size_t barrier, std::size_t expert) const {
    return ratings_[barrier * experts_.size() + expert];
  }
  std::span<const Tfn> barrier_ratings(std::size_t barrier) const {
    return std::span<const Tfn>(ratings_).subspan(barrier * experts_.size(), experts_.size());
  }

 private:
  std::vector<Barrier> barriers_;
  std::vector<std::string> experts_;
  std::vector<Tfn> ratings_;
  ValidationMode mode_;
  std::vector<Warning> warnings_;
};

struct ThresholdStrategy {
  enum class Kind { mean, fixed };
  Kind kind = Kind::mean;
  double value = 0.0;

  static ThresholdStrategy mean() { return {Kind::mean, 0.0}; }
  static ThresholdStrategy fixed(double v) { return {Kind::fixed, v}; }

  /// Accepts "mean" or a finite number.
  static ThresholdStrategy parse(const std::string& text);
  std::string describe() const;

  friend bool operator==(const ThresholdStrategy&, const ThresholdStrategy&) = default;
};

struct BarrierScreening {
  Barrier barrier;
  Tfn aggregate;
  double score = 0.0;
  bool selected = false;
};

struct ScreeningResult {
  std::vector<BarrierScreening> rows;
  double threshold = 0.0;
  ThresholdStrategy strategy;
  std::vector<Warning> warnings;

  std::vector<Barrier> selected() const;
  std::vector<Barrier> rejected() const;
};

/// Per-barrier aggregate over the expert columns, in barrier order.
std::vector<Tfn> aggregate_panel(const RatingPanel& panel);

std::vector<double> score_barriers(std::span<const Tfn> aggregates);

/// Mean strategy: arithmetic mean of the scores over the barrier count.
/// Summation runs over the sorted scores so the value is independent of
/// barrier order, and the result is clamped to [min, max] of the scores.
double compute_threshold(std::span<const double> scores, const ThresholdStrategy& strategy);

/// Aggregate, defuzzify, threshold. A barrier is selected iff score >= threshold.
ScreeningResult screen(const RatingPanel& panel, const ThresholdStrategy& strategy);

}  // namespace fuzzydecide
