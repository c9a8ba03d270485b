#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fuzzydecide/delphi.hpp"
#include "fuzzydecide/fahp.hpp"

namespace fuzzydecide {

enum class InputFormat { csv, json };

/// Explicit "csv"/"json" wins; otherwise the file extension decides.
InputFormat resolve_format(const std::filesystem::path& path, const std::string& explicit_format = {});

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Ratings CSV: header `barrier_id,expert_id,rating` (resolved through
// `scale`) or `barrier_id,expert_id,l,m,u`. One row per cell.
RatingPanel parse_ratings_csv(std::string_view text, const LinguisticScale& scale, ValidationMode mode);

// Ratings JSON: {"scale", "barriers": [{id,name}], "experts": [...],
// "ratings": [{barrier_id, expert_id, rating | tfn: [l,m,u]}]}.
// `scale_override` replaces the document's scale name when set.
RatingPanel parse_ratings_json(std::string_view text, const std::optional<std::string>& scale_override,
                               ValidationMode mode);

RatingPanel load_ratings(const std::filesystem::path& path, InputFormat format,
                         const std::optional<std::string>& scale_name, ValidationMode mode);

// Matrix CSV: header `row_id,col_id,l,m,u`. Diagonal and mirror cells may
// be omitted. Criteria are ordered by first appearance.
PairwiseMatrix parse_matrix_csv(std::string_view text, ValidationMode mode);

// Matrix JSON: {"criteria": [...], "mode": "strict"|"lenient",
// "cells": [{row, col, tfn: [l,m,u]}]}. `mode_override` beats the document.
PairwiseMatrix parse_matrix_json(std::string_view text, const std::optional<ValidationMode>& mode_override);

PairwiseMatrix load_matrix(const std::filesystem::path& path, InputFormat format,
                           const std::optional<ValidationMode>& mode_override);

std::string ratings_to_csv(const RatingPanel& panel);
std::string ratings_to_json(const RatingPanel& panel, const std::string& scale_name);
std::string matrix_to_csv(const PairwiseMatrix& matrix);
std::string matrix_to_json(const PairwiseMatrix& matrix);

/// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);

}  // namespace fuzzydecide
