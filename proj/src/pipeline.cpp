#include "fuzzydecide/pipeline.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "fuzzydecide/digest.hpp"
#include "fuzzydecide/errors.hpp"
#include "fuzzydecide/fahp.hpp"
#include "fuzzydecide/io.hpp"

namespace fuzzydecide {

namespace {

using nlohmann::json;

// Runs `fn`, prefixing any failure with the stage tag while keeping the
// error category (and so the CLI exit code).
template <typename Fn>
auto in_stage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const IoError& e) {
    throw IoError(fmt::format("[{}] {}", stage, e.what()));
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("[{}] {}", stage, e.what()));
  } catch (const std::logic_error& e) {
    throw ValidationError(fmt::format("[{}] {}", stage, e.what()));
  }
}

InputDigest digest_of(std::string role, const std::filesystem::path& path) {
  return {std::move(role), path.string(), sha256_hex(read_file(path))};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

// "path" or {"path": ..., "format": ...}
std::pair<std::string, std::string> source_of(const json& j, const char* key) {
  if (j.is_string()) return {j.get<std::string>(), ""};
  if (j.is_object() && j.contains("path")) return {j["path"].get<std::string>(), j.value("format", std::string{})};
  throw ValidationError(fmt::format("config: '{}' must be a path string or an object with 'path'", key));
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
    PipelineConfig cfg;

    if (!doc.contains("ratings")) throw ValidationError("config: 'ratings' is required");
    auto [ratings_path, ratings_format] = source_of(doc["ratings"], "ratings");
    cfg.screen.ratings = resolve(base_dir, ratings_path);
    cfg.screen.format = ratings_format;
    if (doc.contains("scale")) cfg.screen.scale = doc["scale"].get<std::string>();

    if (doc.contains("threshold")) {
      const auto& t = doc["threshold"];
      cfg.screen.threshold = t.is_number() ? ThresholdStrategy::fixed(t.get<double>())
                                           : ThresholdStrategy::parse(t.get<std::string>());
    }
    if (doc.contains("mode")) cfg.screen.mode = parse_validation_mode(doc["mode"].get<std::string>());

    if (!doc.contains("matrix")) throw ValidationError("config: 'matrix' is required");
    auto [matrix_path, matrix_format] = source_of(doc["matrix"], "matrix");
    cfg.matrix_source = matrix_path == kDeriveMatrixSource ? matrix_path : resolve(base_dir, matrix_path).string();
    cfg.matrix_format = matrix_format;

    if (doc.contains("renumber")) {
      RenumberMap map;
      for (const auto& e : doc["renumber"]) map.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>()});
      cfg.renumber = std::move(map);
    }

    if (doc.contains("output")) {
      const auto& out = doc["output"];
      if (out.contains("path")) cfg.output_path = resolve(base_dir, out["path"].get<std::string>());
      if (out.contains("format")) cfg.output_format = parse_report_format(out["format"].get<std::string>());
    }

    if (doc.contains("tie_break")) cfg.tie_break = doc["tie_break"].get<std::string>();
    if (cfg.tie_break != "index") {
      throw ValidationError(fmt::format("config: unsupported tie_break '{}' (only 'index')", cfg.tie_break));
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

Report run_screen_command(const ScreenOptions& options) {
  Report report;
  report.version = std::string(tool_version());
  report.inputs.push_back(digest_of("ratings", options.ratings));
  const auto format = resolve_format(options.ratings, options.format);
  const auto panel = load_ratings(options.ratings, format, options.scale, options.mode);
  report.screening = screen(panel, options.threshold);
  return report;
}

Report run_rank_command(const RankOptions& options) {
  Report report;
  report.version = std::string(tool_version());
  report.inputs.push_back(digest_of("matrix", options.matrix));
  const auto format = resolve_format(options.matrix, options.format);
  report.ranking = run_fahp(load_matrix(options.matrix, format, options.mode));
  return report;
}

Report run_pipeline_command(const PipelineConfig& config) {
  Report report;
  report.version = std::string(tool_version());

  report.screening = in_stage("screen", [&] {
    report.inputs.push_back(digest_of("ratings", config.screen.ratings));
    const auto format = resolve_format(config.screen.ratings, config.screen.format);
    const auto panel = load_ratings(config.screen.ratings, format, config.screen.scale, config.screen.mode);
    return screen(panel, config.screen.threshold);
  });

  auto matrix = in_stage("rank", [&] {
    if (config.matrix_source == kDeriveMatrixSource) {
      throw ValidationError("comparison matrix must be supplied as a file; the tool does not derive judgments");
    }
    const std::filesystem::path path(config.matrix_source);
    report.inputs.push_back(digest_of("matrix", path));
    return load_matrix(path, resolve_format(path, config.matrix_format), config.screen.mode);
  });

  const auto criteria = in_stage("renumber", [&] {
    if (report.screening->selected().empty()) {
      throw ValidationError("empty selection cannot feed the ranking stage");
    }
    report.renumber = config.renumber ? *config.renumber : positional_renumber_map(*report.screening, matrix.criteria());
    return renumber_selected(*report.screening, *report.renumber);
  });

  report.ranking = in_stage("rank", [&] {
    std::vector<std::string> order;
    for (const auto& c : criteria) order.push_back(c.id);
    auto ordered = matrix.reordered(order);
    // criteria without a display name in the matrix file inherit the barrier name
    std::vector<Barrier> labels = ordered.criteria();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].name == labels[i].id) labels[i].name = criteria[i].name;
    }
    return run_fahp(ordered.relabeled(std::move(labels)));
  });
  return report;
}

}  // namespace fuzzydecide
