#include "fuzzydecide/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "fuzzydecide/errors.hpp"

namespace fuzzydecide {

namespace {

std::string tol(double t) { return fmt::format("±{:g}", t); }

Check near(std::string name, double expected, double actual, double tolerance) {
  return {std::move(name), std::abs(actual - expected) <= tolerance, fmt::format("{:g}", expected),
          fmt::format("{:.6g}", actual), tol(tolerance)};
}

Check near_tfn(std::string name, const Tfn& expected, const Tfn& actual, double tolerance) {
  const bool ok = std::abs(actual.l - expected.l) <= tolerance && std::abs(actual.m - expected.m) <= tolerance &&
                  std::abs(actual.u - expected.u) <= tolerance;
  return {std::move(name), ok, format_tfn(expected),
          fmt::format("({:.6g}, {:.6g}, {:.6g})", actual.l, actual.m, actual.u), tol(tolerance)};
}

const char* decision(bool selected) { return selected ? "selected" : "rejected"; }

void check_screening(const ReferenceStudy& study, const ScreeningResult& s, std::vector<Check>& checks) {
  const auto& expected = study.delphi_expected;
  if (expected.rows.size() != s.rows.size()) {
    checks.push_back({"delphi.barrier_count", false, fmt::format("{}", expected.rows.size()),
                      fmt::format("{}", s.rows.size()), "exact"});
    return;
  }
  std::size_t expected_selected = 0, actual_selected = 0;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& e = expected.rows[i];
    const auto& row = s.rows[i];
    checks.push_back(near("delphi.score." + e.id, e.score, row.score, kScoreTolerance));
    checks.push_back({"delphi.decision." + e.id, e.selected == row.selected && e.id == row.barrier.id,
                      decision(e.selected), decision(row.selected), "exact"});
    expected_selected += e.selected ? 1 : 0;
    actual_selected += row.selected ? 1 : 0;
  }
  checks.push_back({"delphi.threshold",
                    s.threshold >= expected.threshold_low && s.threshold <= expected.threshold_high,
                    fmt::format("[{:g}, {:g}]", expected.threshold_low, expected.threshold_high),
                    fmt::format("{:.6g}", s.threshold), "range"});
  checks.push_back({"delphi.selected_count", expected_selected == actual_selected,
                    fmt::format("{}", expected_selected), fmt::format("{}", actual_selected), "exact"});
}

void check_ranking(const ReferenceStudy& study, const RankingResult& r, std::vector<Check>& checks) {
  const auto& expected = study.fahp_expected;
  const std::size_t n = r.rows.size();
  if (expected.row_means.size() != n || expected.normalized.size() != n || expected.ranks.size() != n) {
    checks.push_back({"fahp.criterion_count", false, fmt::format("{}", expected.row_means.size()),
                      fmt::format("{}", n), "exact"});
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    checks.push_back(near_tfn("fahp.row_mean." + r.rows[i].criterion.id, expected.row_means[i], r.rows[i].row_mean,
                              kRowMeanTolerance));
  }
  checks.push_back(near_tfn("fahp.total", expected.total, r.total, kTotalTolerance));
  const Tfn& printed = expected.p_inverse_printed;
  checks.push_back(near_tfn("fahp.inverse_total", {printed.u, printed.m, printed.l}, r.inverse, kInverseTolerance));

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    checks.push_back(near("fahp.weight." + r.rows[i].criterion.id, expected.normalized[i],
                          r.rows[i].normalized_weight, kWeightTolerance));
    sum += r.rows[i].normalized_weight;
  }
  checks.push_back(near("fahp.weight_sum", 1.0, sum, kWeightSumTolerance));

  std::vector<std::string> expected_order(n), actual_order;
  for (std::size_t i = 0; i < n; ++i) {
    const int k = expected.ranks[i];
    if (k < 1 || static_cast<std::size_t>(k) > n) throw ValidationError("study: expected rank out of range");
    expected_order[static_cast<std::size_t>(k - 1)] = r.rows[i].criterion.id;
  }
  for (const auto& b : r.order()) actual_order.push_back(b.id);
  checks.push_back({"fahp.rank_order", expected_order == actual_order, fmt::format("{}", fmt::join(expected_order, " ")),
                    fmt::format("{}", fmt::join(actual_order, " ")), "exact"});

  // top three strictly decreasing, leader near its published weight
  if (n >= 3) {
    auto weight_of = [&](const std::string& id) {
      for (const auto& row : r.rows) {
        if (row.criterion.id == id) return row.normalized_weight;
      }
      return std::nan("");
    };
    const double w1 = weight_of(expected_order[0]), w2 = weight_of(expected_order[1]),
                 w3 = weight_of(expected_order[2]);
    checks.push_back({"fahp.top3_strict", w1 > w2 && w2 > w3,
                      fmt::format("N({}) > N({}) > N({})", expected_order[0], expected_order[1], expected_order[2]),
                      fmt::format("{:.6g} > {:.6g} > {:.6g}", w1, w2, w3), "strict"});
    for (std::size_t i = 0; i < n; ++i) {
      if (expected.ranks[i] == 1) {
        checks.push_back(near("fahp.top_weight", expected.normalized[i], w1, kWeightTolerance));
      }
    }
  }
}

void collect_anomalies(const ReferenceStudy& study, const RankingResult& r, std::vector<Anomaly>& out) {
  for (const auto& a : study.annotations) out.push_back({a.kind, a.location, a.note, "dataset"});
  for (const auto& w : r.warnings) out.push_back({w.code, "matrix " + w.location, w.message, "validator"});

  // How the published fuzzy weights were actually formed.
  const auto& e = study.fahp_expected;
  const double applied = e.applied_multiplier.m;
  const double canonical = r.inverse.m;
  if (std::abs(applied - canonical) > 0.01 * canonical) {
    std::size_t reproduced = 0, non_monotone = 0;
    for (std::size_t i = 0; i < e.fuzzy_weights.size() && i < e.row_means.size(); ++i) {
      if (std::abs(e.row_means[i].m * applied - e.fuzzy_weights[i].m) <= 5e-4) ++reproduced;
      if (!e.fuzzy_weights[i].is_monotone()) ++non_monotone;
    }
    out.push_back({"modal_multiplier", "ranking fuzzy_weights",
                   fmt::format("published modal weights equal r_m x {:g} for {}/{} criteria; the canonical multiplier "
                               "is 1/total_m = {:.6g}; {} published weight triples are non-monotone",
                               applied, reproduced, e.fuzzy_weights.size(), canonical, non_monotone),
                   "recomputed"});
  }
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<const Check*> VerificationReport::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

VerificationReport verify_reference_study(const ReferenceStudy& study) {
  VerificationReport report;
  report.screening = screen(study.delphi_panel, ThresholdStrategy::mean());
  check_screening(study, report.screening, report.checks);

  try {
    const auto criteria = renumber_selected(report.screening, study.renumber_map);
    std::vector<std::string> got, want;
    for (const auto& c : criteria) got.push_back(c.id);
    for (const auto& c : study.fahp_matrix.criteria()) want.push_back(c.id);
    report.checks.push_back({"renumber.criteria", got == want, fmt::format("{}", fmt::join(want, " ")),
                             fmt::format("{}", fmt::join(got, " ")), "exact"});
  } catch (const ValidationError& e) {
    report.checks.push_back({"renumber.criteria", false, "map covers the selected set", e.what(), "exact"});
  }

  report.ranking = run_fahp(study.fahp_matrix);
  check_ranking(study, report.ranking, report.checks);
  collect_anomalies(study, report.ranking, report.anomalies);
  return report;
}

std::string verification_to_text(const VerificationReport& report) {
  std::string out = "Screening\n";
  out += fmt::format("  {:<6} {:>10} {:>10}  {}\n", "id", "score", "threshold", "decision");
  for (const auto& row : report.screening.rows) {
    out += fmt::format("  {:<6} {:>10.4f} {:>10.4f}  {}\n", row.barrier.id, row.score, report.screening.threshold,
                       decision(row.selected));
  }
  out += "\nRanking\n";
  out += fmt::format("  {:<6} {:>10} {:>5}\n", "id", "weight", "rank");
  for (const auto& row : report.ranking.rows) {
    out += fmt::format("  {:<6} {:>10.5f} {:>5}\n", row.criterion.id, row.normalized_weight, row.rank);
  }

  out += "\nChecks\n";
  for (const auto& c : report.checks) {
    out += fmt::format("  [{}] {:<24} expected {} got {} ({})\n", c.passed ? "PASS" : "FAIL", c.name, c.expected,
                       c.actual, c.tolerance);
  }
  out += "\nKnown anomalies in the published data\n";
  for (const auto& a : report.anomalies) {
    out += fmt::format("  - {} [{}] {}: {}\n", a.kind, a.source, a.location, a.detail);
  }
  const auto failed = report.failures();
  out += fmt::format("\n{} checks, {} failed: {}\n", report.checks.size(), failed.size(),
                     failed.empty() ? "OK" : "VERIFICATION FAILED");
  for (const auto* c : failed) out += fmt::format("  failed: {}\n", c->name);
  return out;
}

std::string verification_to_json(const VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["passed"] = report.passed();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    doc["checks"].push_back({{"name", c.name},
                             {"passed", c.passed},
                             {"expected", c.expected},
                             {"actual", c.actual},
                             {"tolerance", c.tolerance}});
  }
  doc["anomalies"] = nlohmann::ordered_json::array();
  for (const auto& a : report.anomalies) {
    doc["anomalies"].push_back(
        {{"kind", a.kind}, {"source", a.source}, {"location", a.location}, {"detail", a.detail}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace fuzzydecide
