#include "fuzzydecide/reference_study.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "fuzzydecide/digest.hpp"
#include "fuzzydecide/errors.hpp"

namespace fuzzydecide {

namespace {

using nlohmann::json;

Tfn triple(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ValidationError("study: expected a [l, m, u] triple, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Tfn> triples(const json& j) {
  std::vector<Tfn> out;
  for (const auto& t : j) out.push_back(triple(t));
  return out;
}

std::vector<Barrier> barriers_from(const json& j) {
  std::vector<Barrier> out;
  for (const auto& b : j) out.push_back({b.at("id").get<std::string>(), b.at("name").get<std::string>(), ""});
  return out;
}

RatingPanel panel_from(const json& screening) {
  auto barriers = barriers_from(screening.at("barriers"));
  auto experts = screening.at("experts").get<std::vector<std::string>>();
  const auto& rows = screening.at("ratings");
  if (rows.size() != barriers.size()) throw ValidationError("study: ratings row count does not match barriers");
  std::vector<Tfn> cells;
  for (const auto& row : rows) {
    if (row.size() != experts.size()) throw ValidationError("study: ratings column count does not match experts");
    for (const auto& cell : row) cells.push_back(triple(cell));
  }
  return RatingPanel(std::move(barriers), std::move(experts), std::move(cells), ValidationMode::strict);
}

PairwiseMatrix matrix_from(const json& ranking) {
  auto criteria = barriers_from(ranking.at("criteria"));
  const auto mode = parse_validation_mode(ranking.at("mode").get<std::string>());
  std::vector<Tfn> cells;
  for (const auto& row : ranking.at("matrix")) {
    if (row.size() != criteria.size()) throw ValidationError("study: matrix row width does not match criteria");
    for (const auto& cell : row) cells.push_back(triple(cell));
  }
  return PairwiseMatrix(std::move(criteria), std::move(cells), mode);
}

}  // namespace

ReferenceStudy parse_reference_study(std::string_view json_text, std::string_view expected_sha256) {
  if (!expected_sha256.empty()) {
    const auto actual = sha256_hex(json_text);
    if (actual != expected_sha256) {
      throw CorruptResourceError(
          fmt::format("embedded study checksum mismatch: expected {}, got {}", expected_sha256, actual));
    }
  }

  try {
    const json doc = json::parse(json_text);
    const auto& screening = doc.at("screening");
    const auto& ranking = doc.at("ranking");

    ExpectedScreening delphi_expected;
    const auto& se = screening.at("expected");
    delphi_expected.threshold_low = se.at("threshold_range").at(0).get<double>();
    delphi_expected.threshold_high = se.at("threshold_range").at(1).get<double>();
    for (const auto& row : se.at("rows")) {
      const auto decision = row.at("decision").get<std::string>();
      if (decision != "selected" && decision != "rejected") {
        throw ValidationError("study: decision must be selected or rejected, got " + decision);
      }
      delphi_expected.rows.push_back(
          {row.at("id").get<std::string>(), row.at("score").get<double>(), decision == "selected"});
    }

    const auto& re = ranking.at("expected");
    ExpectedRanking fahp_expected{triples(re.at("row_means")),
                                  triple(re.at("total")),
                                  triple(re.at("p_inverse")),
                                  triple(re.at("incr")),
                                  triples(re.at("fuzzy_weights")),
                                  re.at("averaged").get<std::vector<double>>(),
                                  re.at("averaged_total").get<double>(),
                                  re.at("normalized").get<std::vector<double>>(),
                                  re.at("ranks").get<std::vector<int>>()};

    RenumberMap map;
    for (const auto& e : doc.at("renumber").at("map")) {
      map.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>()});
    }

    std::vector<Annotation> annotations;
    for (const auto& a : doc.at("annotations")) {
      annotations.push_back(
          {a.at("kind").get<std::string>(), a.at("location").get<std::string>(), a.at("note").get<std::string>()});
    }

    return ReferenceStudy{doc.at("study").get<std::string>(),
                          panel_from(screening),
                          std::move(delphi_expected),
                          matrix_from(ranking),
                          std::move(fahp_expected),
                          std::move(map),
                          doc.at("renumber").at("inferred").get<bool>(),
                          std::move(annotations)};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("study: malformed document: ") + e.what());
  }
}

ReferenceStudy load_reference_study() {
  return parse_reference_study(embedded_study_text(), embedded_study_digest());
}

std::vector<Barrier> renumber_selected(const ScreeningResult& screening, const RenumberMap& map) {
  const auto selected = screening.selected();
  if (selected.empty()) throw ValidationError("renumber: no barriers were selected");

  std::set<std::string> selected_ids, map_ids;
  for (const auto& b : selected) selected_ids.insert(b.id);
  for (const auto& e : map) {
    if (!map_ids.insert(e.from).second) throw ValidationError("renumber: map lists '" + e.from + "' twice");
  }
  if (selected_ids != map_ids) {
    std::vector<std::string> missing, extra;
    std::set_difference(selected_ids.begin(), selected_ids.end(), map_ids.begin(), map_ids.end(),
                        std::back_inserter(missing));
    std::set_difference(map_ids.begin(), map_ids.end(), selected_ids.begin(), selected_ids.end(),
                        std::back_inserter(extra));
    throw ValidationError(fmt::format("renumber: map does not cover the selected set (unmapped: [{}], not selected: [{}])",
                                      fmt::join(missing, ", "), fmt::join(extra, ", ")));
  }

  std::set<std::string> targets;
  std::vector<Barrier> out;
  for (const auto& b : selected) {
    auto it = std::find_if(map.begin(), map.end(), [&](const RenumberEntry& e) { return e.from == b.id; });
    if (!targets.insert(it->to).second) throw ValidationError("renumber: target id '" + it->to + "' used twice");
    out.push_back({it->to, b.name, b.description});
  }
  return out;
}

RenumberMap positional_renumber_map(const ScreeningResult& screening, const std::vector<Barrier>& targets) {
  const auto selected = screening.selected();
  if (selected.size() != targets.size()) {
    throw ValidationError(fmt::format("renumber: {} barriers selected but the matrix has {} criteria",
                                      selected.size(), targets.size()));
  }
  RenumberMap map;
  for (std::size_t i = 0; i < selected.size(); ++i) map.push_back({selected[i].id, targets[i].id});
  return map;
}

}  // namespace fuzzydecide
