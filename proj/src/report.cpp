#include "fuzzydecide/report.hpp"

#include <cstdlib>

#include <fmt/format.h>
#include <json.hpp>

#include "fuzzydecide/errors.hpp"

#ifndef FUZZYDECIDE_VERSION
#define FUZZYDECIDE_VERSION "0.0.0"
#endif

namespace fuzzydecide {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json num(double v) { return round_significant(v); }

ordered_json tfn_json(const Tfn& t) { return ordered_json::array({num(t.l), num(t.m), num(t.u)}); }

Tfn tfn_back(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

ordered_json barrier_fields(const Barrier& b) {
  ordered_json j{{"id", b.id}, {"name", b.name}};
  if (!b.description.empty()) j["description"] = b.description;
  return j;
}

Barrier barrier_back(const json& j) {
  return {j.at("id").get<std::string>(), j.at("name").get<std::string>(), j.value("description", std::string{})};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string g6(double v) { return fmt::format("{:.6g}", v); }
std::string d4(double v) { return fmt::format("{:.4f}", v); }

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

}  // namespace

std::string_view tool_version() { return FUZZYDECIDE_VERSION; }

ReportFormat parse_report_format(const std::string& text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  if (text == "md") return ReportFormat::md;
  throw ValidationError(fmt::format("unknown output format '{}' (expected json, csv or md)", text));
}

double round_significant(double value) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  return std::strtod(fmt::format("{:.6g}", value).c_str(), nullptr);
}

std::vector<StageWarning> Report::warnings() const {
  std::vector<StageWarning> out;
  if (screening) {
    for (const auto& w : screening->warnings) out.push_back({"screen", w});
  }
  if (ranking) {
    for (const auto& w : ranking->warnings) out.push_back({"rank", w});
  }
  return out;
}

std::string report_to_json(const Report& report) {
  ordered_json doc;
  doc["tool"] = "fuzzydecide";
  doc["version"] = report.version;
  doc["inputs"] = ordered_json::array();
  for (const auto& in : report.inputs) {
    doc["inputs"].push_back(ordered_json{{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  }

  if (report.screening) {
    const auto& s = *report.screening;
    ordered_json section;
    section["strategy"] = s.strategy.kind == ThresholdStrategy::Kind::mean ? "mean" : "fixed";
    section["threshold"] = num(s.threshold);
    section["barriers"] = ordered_json::array();
    std::size_t selected = 0;
    for (const auto& row : s.rows) {
      auto entry = barrier_fields(row.barrier);
      entry["aggregate"] = tfn_json(row.aggregate);
      entry["score"] = num(row.score);
      entry["decision"] = row.selected ? "selected" : "rejected";
      section["barriers"].push_back(std::move(entry));
      selected += row.selected ? 1 : 0;
    }
    section["selected_count"] = selected;
    section["rejected_count"] = s.rows.size() - selected;
    doc["screening"] = std::move(section);
  }

  if (report.renumber) {
    doc["renumber"] = ordered_json::array();
    for (const auto& e : *report.renumber) doc["renumber"].push_back(ordered_json{{"from", e.from}, {"to", e.to}});
  }

  if (report.ranking) {
    const auto& r = *report.ranking;
    ordered_json section;
    section["total"] = tfn_json(r.total);
    section["inverse"] = tfn_json(r.inverse);
    section["criteria"] = ordered_json::array();
    for (const auto& row : r.rows) {
      auto entry = barrier_fields(row.criterion);
      entry["row_mean"] = tfn_json(row.row_mean);
      entry["fuzzy_weight"] = tfn_json(row.fuzzy_weight);
      entry["averaged_weight"] = num(row.averaged_weight);
      entry["normalized_weight"] = num(row.normalized_weight);
      entry["rank"] = row.rank;
      section["criteria"].push_back(std::move(entry));
    }
    section["order"] = ordered_json::array();
    for (const auto& b : r.order()) section["order"].push_back(b.id);
    doc["ranking"] = std::move(section);
  }

  doc["warnings"] = ordered_json::array();
  for (const auto& sw : report.warnings()) {
    doc["warnings"].push_back(ordered_json{{"stage", sw.stage},
                                           {"code", sw.warning.code},
                                           {"location", sw.warning.location},
                                           {"message", sw.warning.message}});
  }
  if (report.elapsed_ms) doc["timing_ms"] = num(*report.elapsed_ms);
  return doc.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Report report;
    report.version = doc.at("version").get<std::string>();
    for (const auto& in : doc.at("inputs")) {
      report.inputs.push_back(
          {in.at("role").get<std::string>(), in.at("path").get<std::string>(), in.at("sha256").get<std::string>()});
    }

    std::vector<Warning> screen_warnings, rank_warnings;
    for (const auto& w : doc.at("warnings")) {
      Warning warning{w.at("code").get<std::string>(), w.at("location").get<std::string>(),
                      w.at("message").get<std::string>()};
      const auto stage = w.at("stage").get<std::string>();
      if (stage == "screen") {
        screen_warnings.push_back(std::move(warning));
      } else if (stage == "rank") {
        rank_warnings.push_back(std::move(warning));
      } else {
        throw ValidationError("report: unknown warning stage '" + stage + "'");
      }
    }

    if (doc.contains("screening")) {
      const auto& s = doc["screening"];
      ScreeningResult result;
      const auto strategy = s.at("strategy").get<std::string>();
      result.threshold = s.at("threshold").get<double>();
      if (strategy == "mean") {
        result.strategy = ThresholdStrategy::mean();
      } else if (strategy == "fixed") {
        result.strategy = ThresholdStrategy::fixed(result.threshold);
      } else {
        throw ValidationError("report: unknown threshold strategy '" + strategy + "'");
      }
      for (const auto& row : s.at("barriers")) {
        result.rows.push_back({barrier_back(row), tfn_back(row.at("aggregate")), row.at("score").get<double>(),
                               row.at("decision").get<std::string>() == "selected"});
      }
      result.warnings = std::move(screen_warnings);
      report.screening = std::move(result);
    }

    if (doc.contains("renumber")) {
      RenumberMap map;
      for (const auto& e : doc["renumber"]) map.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>()});
      report.renumber = std::move(map);
    }

    if (doc.contains("ranking")) {
      const auto& r = doc["ranking"];
      RankingResult result;
      result.total = tfn_back(r.at("total"));
      result.inverse = tfn_back(r.at("inverse"));
      for (const auto& row : r.at("criteria")) {
        result.rows.push_back({barrier_back(row), tfn_back(row.at("row_mean")), tfn_back(row.at("fuzzy_weight")),
                               row.at("averaged_weight").get<double>(), row.at("normalized_weight").get<double>(),
                               row.at("rank").get<int>()});
      }
      result.warnings = std::move(rank_warnings);
      report.ranking = std::move(result);
    }

    if (doc.contains("timing_ms")) report.elapsed_ms = doc["timing_ms"].get<double>();
    return report;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("report: malformed JSON: ") + e.what());
  }
}

std::string report_to_csv(const Report& report) {
  std::string out;
  if (report.screening) {
    const auto& s = *report.screening;
    out += "barrier_id,name,l,m,u,score,threshold,decision\n";
    for (const auto& row : s.rows) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", csv_escape(row.barrier.id), csv_escape(row.barrier.name),
                         g6(row.aggregate.l), g6(row.aggregate.m), g6(row.aggregate.u), g6(row.score),
                         g6(s.threshold), row.selected ? "selected" : "rejected");
    }
  }
  if (report.renumber) {
    if (!out.empty()) out += "\n";
    out += "from_id,to_id\n";
    for (const auto& e : *report.renumber) out += fmt::format("{},{}\n", csv_escape(e.from), csv_escape(e.to));
  }
  if (report.ranking) {
    if (!out.empty()) out += "\n";
    out += "criterion_id,name,r_l,r_m,r_u,w_l,w_m,w_u,averaged,normalized,rank\n";
    for (const auto& row : report.ranking->rows) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", csv_escape(row.criterion.id),
                         csv_escape(row.criterion.name), g6(row.row_mean.l), g6(row.row_mean.m), g6(row.row_mean.u),
                         g6(row.fuzzy_weight.l), g6(row.fuzzy_weight.m), g6(row.fuzzy_weight.u),
                         g6(row.averaged_weight), g6(row.normalized_weight), row.rank);
    }
  }
  const auto warnings = report.warnings();
  if (!warnings.empty()) {
    if (!out.empty()) out += "\n";
    out += "stage,code,location,message\n";
    for (const auto& sw : warnings) {
      out += fmt::format("{},{},{},{}\n", sw.stage, csv_escape(sw.warning.code), csv_escape(sw.warning.location),
                         csv_escape(sw.warning.message));
    }
  }
  return out;
}

std::string report_to_markdown(const Report& report) {
  std::string out = fmt::format("# fuzzydecide report (v{})\n", report.version);
  if (report.screening) {
    const auto& s = *report.screening;
    out += fmt::format("\n## Screening\n\nThreshold ({}): {}\n\n", s.strategy.describe(), d4(s.threshold));
    out += "| Barrier | Name | Score | Decision |\n|---|---|---|---|\n";
    for (const auto& row : s.rows) {
      out += fmt::format("| {} | {} | {} | {} |\n", row.barrier.id, md_escape(row.barrier.name), d4(row.score),
                         row.selected ? "Selected" : "Rejected");
    }
  }
  if (report.renumber) {
    out += "\n## Criteria\n\n| Barrier | Criterion |\n|---|---|\n";
    for (const auto& e : *report.renumber) out += fmt::format("| {} | {} |\n", e.from, e.to);
  }
  if (report.ranking) {
    out += "\n## Ranking\n\n| Barrier | Name | Weight | Rank |\n|---|---|---|---|\n";
    for (const auto& row : report.ranking->rows) {
      out += fmt::format("| {} | {} | {} | {} |\n", row.criterion.id, md_escape(row.criterion.name),
                         d4(row.normalized_weight), row.rank);
    }
  }
  const auto warnings = report.warnings();
  if (!warnings.empty()) {
    out += "\n## Warnings\n\n";
    for (const auto& sw : warnings) {
      out += fmt::format("- [{}] {} ({}): {}\n", sw.stage, sw.warning.code, sw.warning.location,
                         md_escape(sw.warning.message));
    }
  }
  return out;
}

std::string render_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return report_to_json(report);
    case ReportFormat::csv: return report_to_csv(report);
    case ReportFormat::md: return report_to_markdown(report);
  }
  return {};
}

}  // namespace fuzzydecide
