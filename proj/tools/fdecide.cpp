// fdecide: batch front end for fuzzy Delphi screening and Buckley fuzzy AHP ranking.
//
// Exit codes: 0 success, 1 verification failure, 2 validation error, 3 I/O error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "fuzzydecide/digest.hpp"
#include "fuzzydecide/errors.hpp"
#include "fuzzydecide/io.hpp"
#include "fuzzydecide/pipeline.hpp"
#include "fuzzydecide/reference_study.hpp"
#include "fuzzydecide/report.hpp"
#include "fuzzydecide/verify.hpp"

namespace fs = std::filesystem;
namespace fd = fuzzydecide;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

void emit(const std::string& text, const fs::path& out) {
  if (out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    fd::write_file(out, text);
    spdlog::info("wrote {}", out.string());
  }
}

void log_warnings(const fd::Report& report) {
  for (const auto& sw : report.warnings()) {
    spdlog::warn("[{}] {} ({}): {}", sw.stage, sw.warning.code, sw.warning.location, sw.warning.message);
  }
}

template <typename Fn>
fd::Report timed(bool with_timing, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fd::Report report = fn();
  if (with_timing) {
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

void export_study(const fs::path& dir, const std::string& format) {
  const auto study = fd::load_reference_study();
  fs::create_directories(dir);
  const bool csv = format == "csv" || format == "all";
  const bool json = format == "json" || format == "all";
  if (!csv && !json) throw fd::ValidationError("export: --format must be csv, json or all");

  if (csv) {
    emit(fd::ratings_to_csv(study.delphi_panel), dir / "ratings.csv");
    emit(fd::matrix_to_csv(study.fahp_matrix), dir / "matrix.csv");
  }
  if (json) {
    emit(fd::ratings_to_json(study.delphi_panel, fd::LinguisticScale::delphi10().name()), dir / "ratings.json");
    emit(fd::matrix_to_json(study.fahp_matrix), dir / "matrix.json");
  }

  nlohmann::ordered_json config;
  const std::string ext = json ? "json" : "csv";
  config["ratings"] = {{"path", "ratings." + ext}, {"format", ext}};
  config["scale"] = fd::LinguisticScale::delphi10().name();
  config["threshold"] = "mean";
  config["matrix"] = {{"path", "matrix." + ext}, {"format", ext}};
  config["mode"] = fd::to_string(study.fahp_matrix.mode());
  config["renumber"] = nlohmann::ordered_json::array();
  for (const auto& e : study.renumber_map) config["renumber"].push_back({{"from", e.from}, {"to", e.to}});
  config["output"] = {{"format", "json"}};
  config["tie_break"] = "index";
  emit(config.dump(2) + "\n", dir / "pipeline.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy Delphi screening and fuzzy AHP ranking"};
  app.set_version_flag("--version", std::string(fd::tool_version()));
  app.require_subcommand(1);

  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "stderr log level")
      ->check(CLI::IsMember({"error", "warn", "info"}))
      ->capture_default_str();

  // screen
  auto* screen_cmd = app.add_subcommand("screen", "Fuzzy Delphi screening of rated barriers");
  fd::ScreenOptions screen_opts;
  std::string threshold = "mean", screen_mode = "strict", screen_emit = "json", screen_scale;
  fs::path screen_out;
  bool screen_timing = false;
  screen_cmd->add_option("--ratings", screen_opts.ratings, "ratings file (CSV or JSON)")->required();
  screen_cmd->add_option("--format", screen_opts.format, "input format; default from extension")
      ->check(CLI::IsMember({"csv", "json"}));
  screen_cmd->add_option("--scale", screen_scale, "linguistic scale for integer ratings (default delphi-10)");
  screen_cmd->add_option("--threshold", threshold, "'mean' or a fixed value")->capture_default_str();
  screen_cmd->add_option("--mode", screen_mode, "validation mode")
      ->check(CLI::IsMember({"strict", "lenient"}))
      ->capture_default_str();
  screen_cmd->add_option("--emit", screen_emit, "report format")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();
  screen_cmd->add_option("--out", screen_out, "write the report here instead of stdout");
  screen_cmd->add_flag("--timing", screen_timing, "include wall-clock timing in the report");

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "Buckley fuzzy AHP ranking of a pairwise comparison matrix");
  fd::RankOptions rank_opts;
  std::string rank_mode, rank_emit = "json";
  fs::path rank_out;
  bool rank_timing = false;
  rank_cmd->add_option("--matrix", rank_opts.matrix, "pairwise matrix file (CSV or JSON)")->required();
  rank_cmd->add_option("--format", rank_opts.format, "input format; default from extension")
      ->check(CLI::IsMember({"csv", "json"}));
  rank_cmd->add_option("--mode", rank_mode, "validation mode (default: file's mode, else strict)")
      ->check(CLI::IsMember({"strict", "lenient"}));
  rank_cmd->add_option("--emit", rank_emit, "report format")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();
  rank_cmd->add_option("--out", rank_out, "write the report here instead of stdout");
  rank_cmd->add_flag("--timing", rank_timing, "include wall-clock timing in the report");

  // pipeline
  auto* pipeline_cmd = app.add_subcommand("pipeline", "screen, renumber and rank in one run");
  fs::path config_path, pipeline_out;
  std::string pipeline_emit;
  bool pipeline_timing = false;
  pipeline_cmd->add_option("--config", config_path, "JSON pipeline config")->required();
  pipeline_cmd->add_option("--emit", pipeline_emit, "override the config's output format")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  pipeline_cmd->add_option("--out", pipeline_out, "override the config's output path");
  pipeline_cmd->add_flag("--timing", pipeline_timing, "include wall-clock timing in the report");

  // paper-verify
  auto* verify_cmd =
      app.add_subcommand("paper-verify", "re-run the embedded case study and compare with its published values");
  std::string verify_emit = "text";
  fs::path dataset_path;
  verify_cmd->add_option("--emit", verify_emit, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify_cmd->add_option("--dataset", dataset_path, "verify this study document instead of the embedded one");

  // export
  auto* export_cmd = app.add_subcommand("export", "write the embedded case study as input templates");
  fs::path export_dir;
  std::string export_format = "all";
  export_cmd->add_option("--out", export_dir, "output directory")->required();
  export_cmd->add_option("--format", export_format, "csv, json or all")
      ->check(CLI::IsMember({"csv", "json", "all"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  auto logger = spdlog::stderr_color_st("fdecide");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%l: %v");
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (*screen_cmd) {
      screen_opts.threshold = fd::ThresholdStrategy::parse(threshold);
      screen_opts.mode = fd::parse_validation_mode(screen_mode);
      if (!screen_scale.empty()) screen_opts.scale = screen_scale;
      const auto report = timed(screen_timing, [&] { return fd::run_screen_command(screen_opts); });
      log_warnings(report);
      emit(fd::render_report(report, fd::parse_report_format(screen_emit)), screen_out);
    } else if (*rank_cmd) {
      if (!rank_mode.empty()) rank_opts.mode = fd::parse_validation_mode(rank_mode);
      const auto report = timed(rank_timing, [&] { return fd::run_rank_command(rank_opts); });
      log_warnings(report);
      emit(fd::render_report(report, fd::parse_report_format(rank_emit)), rank_out);
    } else if (*pipeline_cmd) {
      auto config = fd::parse_pipeline_config(fd::read_file(config_path), config_path.parent_path());
      if (!pipeline_emit.empty()) config.output_format = fd::parse_report_format(pipeline_emit);
      if (!pipeline_out.empty()) config.output_path = pipeline_out;
      const auto report = timed(pipeline_timing, [&] {
        auto r = fd::run_pipeline_command(config);
        r.inputs.insert(r.inputs.begin(), {"config", config_path.string(), fd::sha256_hex(fd::read_file(config_path))});
        return r;
      });
      log_warnings(report);
      emit(fd::render_report(report, config.output_format), config.output_path);
    } else if (*verify_cmd) {
      const auto study = dataset_path.empty() ? fd::load_reference_study()
                                              : fd::parse_reference_study(fd::read_file(dataset_path));
      const auto result = fd::verify_reference_study(study);
      emit(verify_emit == "json" ? fd::verification_to_json(result) : fd::verification_to_text(result), {});
      for (const auto* c : result.failures()) spdlog::error("check failed: {}", c->name);
      return result.passed() ? kExitOk : kExitVerificationFailed;
    } else if (*export_cmd) {
      export_study(export_dir, export_format);
    }
  } catch (const fd::IoError& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  } catch (const fd::CorruptResourceError& e) {
    spdlog::error("{}", e.what());
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  }
  return kExitOk;
}
