#include "fuzzydecide/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "fuzzydecide/errors.hpp"

namespace fuzzydecide {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

// Plain comma-separated rows: no quoting, blank lines skipped, fields trimmed.
std::vector<CsvRow> split_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty()) continue;

    CsvRow row{line_no, {}};
    while (true) {
      const auto comma = line.find(',');
      row.fields.push_back(trim(line.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_real(std::string_view field, std::size_t line, std::string_view name) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ValidationError(fmt::format("line {}: field '{}': '{}' is not a finite number", line, name, field));
  }
  return value;
}

int parse_int(std::string_view field, std::size_t line, std::string_view name) {
  int value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw ValidationError(fmt::format("line {}: field '{}': '{}' is not an integer", line, name, field));
  }
  return value;
}

void require_header(const CsvRow& header, const std::vector<std::string_view>& expected) {
  if (header.fields != expected) {
    std::string want;
    for (auto f : expected) want += (want.empty() ? "" : ",") + std::string(f);
    throw ValidationError(fmt::format("line {}: expected header '{}'", header.line, want));
  }
}

Tfn tfn_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number()) {
    throw ValidationError(fmt::format("{}: 'tfn' must be an array of three numbers", where));
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Barrier barrier_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return {j.get<std::string>(), j.get<std::string>(), ""};
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
    throw ValidationError(fmt::format("{}: expected an id string or an object with 'id'", where));
  }
  Barrier b{j["id"].get<std::string>(), j["id"].get<std::string>(), ""};
  if (j.contains("name")) b.name = j["name"].get<std::string>();
  if (j.contains("description")) b.description = j["description"].get<std::string>();
  return b;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_exact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

InputFormat resolve_format(const std::filesystem::path& path, const std::string& explicit_format) {
  if (explicit_format == "csv") return InputFormat::csv;
  if (explicit_format == "json") return InputFormat::json;
  if (!explicit_format.empty()) {
    throw ValidationError(fmt::format("unknown input format '{}' (expected csv or json)", explicit_format));
  }
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".json") return InputFormat::json;
  if (ext == ".csv") return InputFormat::csv;
  throw ValidationError(fmt::format("cannot infer the format of '{}'; pass --format csv|json", path.string()));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error while reading '{}'", path.string()));
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("error while writing '{}'", path.string()));
}

RatingPanel parse_ratings_csv(std::string_view text, const LinguisticScale& scale, ValidationMode mode) {
  const auto rows = split_csv(text);
  if (rows.empty()) throw ValidationError("ratings CSV is empty");

  const bool integer_path = rows.front().fields.size() == 3;
  if (integer_path) {
    require_header(rows.front(), {"barrier_id", "expert_id", "rating"});
  } else {
    require_header(rows.front(), {"barrier_id", "expert_id", "l", "m", "u"});
  }
  const std::size_t width = rows.front().fields.size();

  std::vector<RatingRecord> records;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != width) {
      throw ValidationError(fmt::format("line {}: expected {} fields, got {}", row.line, width, row.fields.size()));
    }
    if (row.fields[0].empty()) throw ValidationError(fmt::format("line {}: field 'barrier_id' is empty", row.line));
    if (row.fields[1].empty()) throw ValidationError(fmt::format("line {}: field 'expert_id' is empty", row.line));

    RatingRecord rec{std::string(row.fields[0]), std::string(row.fields[1]), {}};
    if (integer_path) {
      const int rating = parse_int(row.fields[2], row.line, "rating");
      try {
        rec.rating = encode_rating(scale, rating);
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("line {}: field 'rating': {}", row.line, e.what()));
      }
    } else {
      rec.rating = {parse_real(row.fields[2], row.line, "l"), parse_real(row.fields[3], row.line, "m"),
                    parse_real(row.fields[4], row.line, "u")};
    }
    records.push_back(std::move(rec));
  }
  return RatingPanel::from_records({}, std::nullopt, records, mode);
}

RatingPanel parse_ratings_json(std::string_view text, const std::optional<std::string>& scale_override,
                               ValidationMode mode) {
  try {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ValidationError("ratings JSON must be an object");

    std::string scale_name = "delphi-10";
    if (doc.contains("scale")) scale_name = doc["scale"].get<std::string>();
    if (scale_override) scale_name = *scale_override;
    const auto& scale = LinguisticScale::builtin(scale_name);

    std::vector<Barrier> barriers;
    if (doc.contains("barriers")) {
      const auto& list = doc["barriers"];
      for (std::size_t i = 0; i < list.size(); ++i) {
        barriers.push_back(barrier_from_json(list[i], fmt::format("barriers[{}]", i)));
      }
    }
    std::optional<std::vector<std::string>> experts;
    if (doc.contains("experts")) {
      experts.emplace();
      for (const auto& e : doc["experts"]) {
        if (!e.is_string()) throw ValidationError("experts: every entry must be a string");
        experts->push_back(e.get<std::string>());
      }
    }
    if (!doc.contains("ratings") || !doc["ratings"].is_array()) {
      throw ValidationError("ratings JSON needs a 'ratings' array");
    }

    std::vector<RatingRecord> records;
    const auto& list = doc["ratings"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto where = fmt::format("ratings[{}]", i);
      const auto& r = list[i];
      if (!r.is_object() || !r.contains("barrier_id") || !r.contains("expert_id") || !r["barrier_id"].is_string() ||
          !r["expert_id"].is_string()) {
        throw ValidationError(where + ": needs string fields 'barrier_id' and 'expert_id'");
      }
      RatingRecord rec{r["barrier_id"].get<std::string>(), r["expert_id"].get<std::string>(), {}};
      if (r.contains("tfn")) {
        rec.rating = tfn_from_json(r["tfn"], where);
      } else if (r.contains("rating") && r["rating"].is_number_integer()) {
        try {
          rec.rating = encode_rating(scale, r["rating"].get<int>());
        } catch (const ValidationError& e) {
          throw ValidationError(fmt::format("{}: field 'rating': {}", where, e.what()));
        }
      } else {
        throw ValidationError(where + ": needs an integer 'rating' or a 'tfn' triple");
      }
      records.push_back(std::move(rec));
    }
    return RatingPanel::from_records(std::move(barriers), std::move(experts), records, mode);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON field: ") + e.what());
  }
}

RatingPanel load_ratings(const std::filesystem::path& path, InputFormat format,
                         const std::optional<std::string>& scale_name, ValidationMode mode) {
  const auto text = read_file(path);
  if (format == InputFormat::csv) {
    return parse_ratings_csv(text, LinguisticScale::builtin(scale_name.value_or("delphi-10")), mode);
  }
  return parse_ratings_json(text, scale_name, mode);
}

PairwiseMatrix parse_matrix_csv(std::string_view text, ValidationMode mode) {
  const auto rows = split_csv(text);
  if (rows.empty()) throw ValidationError("matrix CSV is empty");
  require_header(rows.front(), {"row_id", "col_id", "l", "m", "u"});

  std::vector<Barrier> criteria;
  std::unordered_map<std::string, std::size_t> seen;
  auto note = [&](std::string_view id) {
    std::string key(id);
    if (!seen.contains(key)) {
      seen.emplace(key, criteria.size());
      criteria.push_back({key, key, ""});
    }
  };

  std::vector<MatrixEntry> entries;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 5) {
      throw ValidationError(fmt::format("line {}: expected 5 fields, got {}", row.line, row.fields.size()));
    }
    if (row.fields[0].empty()) throw ValidationError(fmt::format("line {}: field 'row_id' is empty", row.line));
    if (row.fields[1].empty()) throw ValidationError(fmt::format("line {}: field 'col_id' is empty", row.line));
    note(row.fields[0]);
    note(row.fields[1]);
    entries.push_back({std::string(row.fields[0]), std::string(row.fields[1]),
                       {parse_real(row.fields[2], row.line, "l"), parse_real(row.fields[3], row.line, "m"),
                        parse_real(row.fields[4], row.line, "u")}});
  }
  if (criteria.empty()) throw ValidationError("matrix CSV has no cells");
  return build_matrix(entries, std::move(criteria), mode);
}

PairwiseMatrix parse_matrix_json(std::string_view text, const std::optional<ValidationMode>& mode_override) {
  try {
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("criteria") || !doc["criteria"].is_array()) {
      throw ValidationError("matrix JSON needs a 'criteria' array");
    }
    ValidationMode mode = ValidationMode::strict;
    if (doc.contains("mode")) mode = parse_validation_mode(doc["mode"].get<std::string>());
    if (mode_override) mode = *mode_override;

    std::vector<Barrier> criteria;
    const auto& list = doc["criteria"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      criteria.push_back(barrier_from_json(list[i], fmt::format("criteria[{}]", i)));
    }

    std::vector<MatrixEntry> entries;
    if (doc.contains("cells")) {
      const auto& cells = doc["cells"];
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto where = fmt::format("cells[{}]", i);
        const auto& c = cells[i];
        if (!c.is_object() || !c.contains("row") || !c.contains("col") || !c["row"].is_string() ||
            !c["col"].is_string() || !c.contains("tfn")) {
          throw ValidationError(where + ": needs string fields 'row', 'col' and a 'tfn' triple");
        }
        entries.push_back({c["row"].get<std::string>(), c["col"].get<std::string>(), tfn_from_json(c["tfn"], where)});
      }
    }
    return build_matrix(entries, std::move(criteria), mode);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON field: ") + e.what());
  }
}

PairwiseMatrix load_matrix(const std::filesystem::path& path, InputFormat format,
                           const std::optional<ValidationMode>& mode_override) {
  const auto text = read_file(path);
  if (format == InputFormat::csv) return parse_matrix_csv(text, mode_override.value_or(ValidationMode::strict));
  return parse_matrix_json(text, mode_override);
}

std::string ratings_to_csv(const RatingPanel& panel) {
  std::string out = "barrier_id,expert_id,l,m,u\n";
  for (std::size_t b = 0; b < panel.barrier_count(); ++b) {
    for (std::size_t e = 0; e < panel.expert_count(); ++e) {
      const auto& t = panel.rating(b, e);
      out += fmt::format("{},{},{},{},{}\n", panel.barriers()[b].id, panel.experts()[e], format_exact(t.l),
                         format_exact(t.m), format_exact(t.u));
    }
  }
  return out;
}

std::string ratings_to_json(const RatingPanel& panel, const std::string& scale_name) {
  ordered_json doc;
  doc["scale"] = scale_name;
  doc["barriers"] = ordered_json::array();
  for (const auto& b : panel.barriers()) {
    ordered_json entry{{"id", b.id}, {"name", b.name}};
    if (!b.description.empty()) entry["description"] = b.description;
    doc["barriers"].push_back(entry);
  }
  doc["experts"] = panel.experts();
  doc["ratings"] = ordered_json::array();
  for (std::size_t b = 0; b < panel.barrier_count(); ++b) {
    for (std::size_t e = 0; e < panel.expert_count(); ++e) {
      const auto& t = panel.rating(b, e);
      doc["ratings"].push_back(ordered_json{{"barrier_id", panel.barriers()[b].id},
                                            {"expert_id", panel.experts()[e]},
                                            {"tfn", ordered_json::array({t.l, t.m, t.u})}});
    }
  }
  return doc.dump(2) + "\n";
}

std::string matrix_to_csv(const PairwiseMatrix& matrix) {
  std::string out = "row_id,col_id,l,m,u\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      const auto& t = matrix.at(i, j);
      out += fmt::format("{},{},{},{},{}\n", matrix.criteria()[i].id, matrix.criteria()[j].id, format_exact(t.l),
                         format_exact(t.m), format_exact(t.u));
    }
  }
  return out;
}

std::string matrix_to_json(const PairwiseMatrix& matrix) {
  ordered_json doc;
  doc["criteria"] = ordered_json::array();
  for (const auto& c : matrix.criteria()) doc["criteria"].push_back(ordered_json{{"id", c.id}, {"name", c.name}});
  doc["mode"] = to_string(matrix.mode());
  doc["cells"] = ordered_json::array();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      const auto& t = matrix.at(i, j);
      doc["cells"].push_back(ordered_json{{"row", matrix.criteria()[i].id},
                                          {"col", matrix.criteria()[j].id},
                                          {"tfn", ordered_json::array({t.l, t.m, t.u})}});
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace fuzzydecide
