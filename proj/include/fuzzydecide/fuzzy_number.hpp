#pragma once

#include <span>
#include <string>
#include <vector>

namespace fuzzydecide {

/// Triangular fuzzy number (l, m, u): membership rises linearly from l to the
/// modal value m and falls back to zero at u.
struct TriangularFuzzyNumber {
  double l = 0.0;
  double m = 0.0;
  double u = 0.0;

  bool is_finite() const;
  bool is_monotone() const { return l <= m && m <= u; }
  bool is_nonnegative() const { return l >= 0.0 && m >= 0.0 && u >= 0.0; }
  bool is_positive() const { return l > 0.0 && m > 0.0 && u > 0.0; }

  friend bool operator==(const TriangularFuzzyNumber&, const TriangularFuzzyNumber&) = default;
};

using Tfn = TriangularFuzzyNumber;

enum class ValidationMode { strict, lenient };

const char* to_string(ValidationMode mode);
ValidationMode parse_validation_mode(const std::string& text);

/// Structured record of an invariant that lenient mode let through.
struct Warning {
  std::string code;      // e.g. "non_monotone", "reciprocity", "diagonal"
  std::string location;  // e.g. "B8,B4"
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

std::string format_tfn(const Tfn& t);

/// Checks a pipeline input triple: it must be finite and nonnegative in every
/// mode. A non-monotone triple throws ValidationError in strict mode and is
/// appended to `warnings` in lenient mode.
void check_input_tfn(const Tfn& t, ValidationMode mode, const std::string& location,
                     std::vector<Warning>& warnings);

double membership_at(const Tfn& t, double x);

Tfn tfn_multiply(const Tfn& a, const Tfn& b);
Tfn tfn_add(const Tfn& a, const Tfn& b);
Tfn tfn_reciprocal(const Tfn& t);

/// Reciprocal of a column-sum total; the vector every row geometric mean is
/// multiplied by when normalizing fuzzy weights.
Tfn tfn_total_inverse(const Tfn& total);

/// (prod v)^(1/k) via the mean of logarithms. Any zero factor yields 0.
/// Inputs are summed in sorted order so the result does not depend on the
/// order of `values`.
double geometric_mean(std::span<const double> values);

/// Fuzzy Delphi aggregation: (min l, geometric mean of m, max u).
Tfn aggregate_min_geo_max(std::span<const Tfn> opinions);

double centroid_defuzzify(const Tfn& t);

}  // namespace fuzzydecide
