#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzydecide/delphi.hpp"
#include "fuzzydecide/fahp.hpp"
#include "fuzzydecide/reference_study.hpp"

namespace fuzzydecide {

std::string_view tool_version();

enum class ReportFormat { json, csv, md };

ReportFormat parse_report_format(const std::string& text);

struct InputDigest {
  std::string role;  // "ratings", "matrix", "config"
  std::string path;
  std::string sha256;
};

struct StageWarning {
  std::string stage;  // "screen" or "rank"
  Warning warning;
};

/// Everything a run produced. Stage results keep their own warning lists;
/// serialized reports list each warning once, in the top-level section.
struct Report {
  std::string version;
  std::vector<InputDigest> inputs;
  std::optional<ScreeningResult> screening;
  std::optional<RenumberMap> renumber;
  std::optional<RankingResult> ranking;
  std::optional<double> elapsed_ms;

  std::vector<StageWarning> warnings() const;
};

/// Rounds to 6 significant digits, the precision of machine-format reports.
double round_significant(double value);

std::string report_to_json(const Report& report);
Report report_from_json(std::string_view text);
std::string report_to_csv(const Report& report);
std::string report_to_markdown(const Report& report);
std::string render_report(const Report& report, ReportFormat format);

}  // namespace fuzzydecide
