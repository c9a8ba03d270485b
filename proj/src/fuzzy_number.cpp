#include "fuzzydecide/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "fuzzydecide/errors.hpp"

namespace fuzzydecide {

bool TriangularFuzzyNumber::is_finite() const {
  return std::isfinite(l) && std::isfinite(m) && std::isfinite(u);
}

const char* to_string(ValidationMode mode) {
  return mode == ValidationMode::strict ? "strict" : "lenient";
}

ValidationMode parse_validation_mode(const std::string& text) {
  if (text == "strict") return ValidationMode::strict;
  if (text == "lenient") return ValidationMode::lenient;
  throw ValidationError(fmt::format("unknown validation mode '{}' (expected strict or lenient)", text));
}

std::string format_tfn(const Tfn& t) { return fmt::format("({:g}, {:g}, {:g})", t.l, t.m, t.u); }

void check_input_tfn(const Tfn& t, ValidationMode mode, const std::string& location,
                     std::vector<Warning>& warnings) {
  if (!t.is_finite()) {
    throw ValidationError(fmt::format("{}: non-finite component in {}", location, format_tfn(t)));
  }
  if (!t.is_nonnegative()) {
    throw ValidationError(fmt::format("{}: negative component in {}", location, format_tfn(t)));
  }
  if (!t.is_monotone()) {
    auto message = fmt::format("{} violates l <= m <= u", format_tfn(t));
    if (mode == ValidationMode::strict) {
      throw ValidationError(fmt::format("{}: {}", location, message));
    }
    warnings.push_back({"non_monotone", location, std::move(message)});
  }
}

double membership_at(const Tfn& t, double x) {
  if (!t.is_finite() || !t.is_monotone()) {
    throw std::invalid_argument("membership_at: " + format_tfn(t) + " is not a valid triangular number");
  }
  if (!std::isfinite(x)) throw std::invalid_argument("membership_at: x must be finite");

  if (x < t.l || x > t.u) return 0.0;
  if (x == t.m) return 1.0;
  if (x < t.m) return (x - t.l) / (t.m - t.l);
  return (t.u - x) / (t.u - t.m);
}

Tfn tfn_multiply(const Tfn& a, const Tfn& b) {
  if (!a.is_nonnegative() || !b.is_nonnegative()) {
    throw std::domain_error("tfn_multiply: operands must be nonnegative, got " + format_tfn(a) + " and " +
                            format_tfn(b));
  }
  return {a.l * b.l, a.m * b.m, a.u * b.u};
}

Tfn tfn_add(const Tfn& a, const Tfn& b) {
  if (!a.is_finite() || !b.is_finite()) throw std::domain_error("tfn_add: non-finite operand");
  return {a.l + b.l, a.m + b.m, a.u + b.u};
}

Tfn tfn_reciprocal(const Tfn& t) {
  if (!t.is_finite() || !t.is_positive()) {
    throw std::domain_error("tfn_reciprocal: components must be finite and > 0, got " + format_tfn(t));
  }
  return {1.0 / t.u, 1.0 / t.m, 1.0 / t.l};
}

Tfn tfn_total_inverse(const Tfn& total) { return tfn_reciprocal(total); }

double geometric_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("geometric_mean: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() >= 0.0)) throw std::domain_error("geometric_mean: negative or NaN value");
  if (!std::isfinite(sorted.back())) throw std::domain_error("geometric_mean: non-finite value");
  if (sorted.front() == 0.0) return 0.0;

  double log_sum = 0.0;
  for (double v : sorted) log_sum += std::log(v);
  // exp/log rounding can step just outside the input range
  return std::clamp(std::exp(log_sum / static_cast<double>(sorted.size())), sorted.front(), sorted.back());
}

Tfn aggregate_min_geo_max(std::span<const Tfn> opinions) {
  if (opinions.empty()) throw std::invalid_argument("aggregate_min_geo_max: empty panel");

  std::vector<double> modes;
  modes.reserve(opinions.size());
  Tfn out{opinions.front().l, 0.0, opinions.front().u};
  for (const auto& o : opinions) {
    out.l = std::min(out.l, o.l);
    out.u = std::max(out.u, o.u);
    modes.push_back(o.m);
  }
  out.m = geometric_mean(modes);
  return out;
}

double centroid_defuzzify(const Tfn& t) {
  if (!t.is_finite()) throw std::domain_error("centroid_defuzzify: non-finite component in " + format_tfn(t));
  return (t.l + t.m + t.u) / 3.0;
}

}  // namespace fuzzydecide
