#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fuzzydecide/delphi.hpp"
#include "fuzzydecide/report.hpp"

namespace fuzzydecide {

/// Matrix source value that asks the tool to derive comparisons itself. It
/// is recognised only to be refused: judgments must come from a file.
inline constexpr std::string_view kDeriveMatrixSource = "derive:prompt-free";

struct ScreenOptions {
  std::filesystem::path ratings;
  std::string format;  // "", "csv" or "json"
  std::optional<std::string> scale;
  ThresholdStrategy threshold = ThresholdStrategy::mean();
  ValidationMode mode = ValidationMode::strict;
};

struct RankOptions {
  std::filesystem::path matrix;
  std::string format;
  std::optional<ValidationMode> mode;  // unset: file's own mode, else strict
};

struct PipelineConfig {
  ScreenOptions screen;
  std::string matrix_source;
  std::string matrix_format;
  std::optional<RenumberMap> renumber;  // unset: positional onto the matrix criteria
  std::filesystem::path output_path;    // empty: stdout
  ReportFormat output_format = ReportFormat::json;
  std::string tie_break = "index";
};

/// Reads a JSON pipeline config. Relative paths resolve against `base_dir`.
PipelineConfig parse_pipeline_config(std::string_view json_text, const std::filesystem::path& base_dir);

Report run_screen_command(const ScreenOptions& options);
Report run_rank_command(const RankOptions& options);

/// screen -> renumber -> rank. Errors carry a "[screen]", "[renumber]" or
/// "[rank]" prefix and keep their original category.
Report run_pipeline_command(const PipelineConfig& config);

}  // namespace fuzzydecide
