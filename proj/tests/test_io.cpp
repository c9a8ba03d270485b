#include <doctest.h>

#include <filesystem>
#include <limits>
#include <string>

#include "fuzzydecide/errors.hpp"
#include "fuzzydecide/io.hpp"
#include "fuzzydecide/reference_study.hpp"

using namespace fuzzydecide;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / "fuzzydecide_test_io";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("format resolution") {
  CHECK(resolve_format("a/b.csv") == InputFormat::csv);
  CHECK(resolve_format("a/b.JSON") == InputFormat::json);
  CHECK(resolve_format("a/b.txt", "json") == InputFormat::json);
  CHECK_THROWS_AS(resolve_format("a/b.txt"), ValidationError);
  CHECK_THROWS_AS(resolve_format("a/b.csv", "xml"), ValidationError);
}

TEST_CASE("ratings CSV, integer path") {
  const auto panel = parse_ratings_csv("barrier_id,expert_id,rating\nB1,E1,5\nB1,E2,10\nB2,E1,1\nB2,E2,7\n",
                                       LinguisticScale::delphi10(), ValidationMode::strict);
  CHECK(panel.barrier_count() == 2);
  CHECK(panel.rating(0, 0) == Tfn{4, 5, 6});
  CHECK(panel.rating(0, 1) == Tfn{10, 10, 10});
  CHECK(panel.rating(1, 0) == Tfn{0, 0, 1});
}

TEST_CASE("ratings CSV, triple path tolerates CRLF, BOM and blank lines") {
  const auto panel = parse_ratings_csv("\xEF\xBB\xBF" "barrier_id,expert_id,l,m,u\r\n\r\nB1,E1, 1,2,3\r\n",
                                       LinguisticScale::delphi10(), ValidationMode::strict);
  CHECK(panel.rating(0, 0) == Tfn{1, 2, 3});
}

TEST_CASE("ratings CSV errors name the line and field") {
  const auto& s = LinguisticScale::delphi10();
  CHECK_THROWS_WITH_AS(parse_ratings_csv("barrier_id,expert_id,rating\nB1,E1,11\n", s, ValidationMode::strict),
                       doctest::Contains("line 2: field 'rating'"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_ratings_csv("barrier_id,expert_id,rating\nB1,E1,x\n", s, ValidationMode::strict),
                       doctest::Contains("line 2: field 'rating'"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_ratings_csv("barrier_id,expert_id,l,m,u\nB1,E1,1,2,3\nB2,E1,1,nan,3\n", s,
                                         ValidationMode::strict),
                       doctest::Contains("line 3: field 'm'"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_ratings_csv("barrier_id,expert_id,l,m,u\nB1,E1,1,2\n", s, ValidationMode::strict),
                       doctest::Contains("line 2"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_ratings_csv("barrier,expert,rating\n", s, ValidationMode::strict),
                       doctest::Contains("line 1"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_ratings_csv("barrier_id,expert_id,rating\n,E1,3\n", s, ValidationMode::strict),
                       doctest::Contains("field 'barrier_id'"), ValidationError);
  CHECK_THROWS_AS(parse_ratings_csv("", s, ValidationMode::strict), ValidationError);
  CHECK_THROWS_AS(parse_ratings_csv("barrier_id,expert_id,l,m,u\nB1,E1,3,2,1\n", s, ValidationMode::strict),
                  ValidationError);
  CHECK_NOTHROW(parse_ratings_csv("barrier_id,expert_id,l,m,u\nB1,E1,3,2,1\n", s, ValidationMode::lenient));
}

TEST_CASE("ratings JSON") {
  const char* doc = R"({"scale": "delphi-10",
    "barriers": [{"id": "B1", "name": "first"}, "B2"],
    "experts": ["E1"],
    "ratings": [{"barrier_id": "B2", "expert_id": "E1", "rating": 3},
                {"barrier_id": "B1", "expert_id": "E1", "tfn": [1.5, 2, 2.5]}]})";
  const auto panel = parse_ratings_json(doc, std::nullopt, ValidationMode::strict);
  CHECK(panel.barriers()[0].name == "first");
  CHECK(panel.barriers()[1].id == "B2");
  CHECK(panel.rating(0, 0) == Tfn{1.5, 2, 2.5});
  CHECK(panel.rating(1, 0) == Tfn{2, 3, 4});

  CHECK_THROWS_AS(parse_ratings_json(doc, std::string("other"), ValidationMode::strict), ValidationError);
  CHECK_THROWS_AS(parse_ratings_json("{", std::nullopt, ValidationMode::strict), ValidationError);
  CHECK_THROWS_AS(parse_ratings_json(R"({"scale": 4, "ratings": []})", std::nullopt, ValidationMode::strict),
                  ValidationError);
  CHECK_THROWS_WITH_AS(parse_ratings_json(R"({"ratings": [{"barrier_id": "B1", "expert_id": "E1", "rating": 11}]})",
                                          std::nullopt, ValidationMode::strict),
                       doctest::Contains("ratings[0]: field 'rating'"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_ratings_json(R"({"ratings": [{"barrier_id": "B1", "expert_id": "E1", "tfn": [1, 2]}]})",
                                          std::nullopt, ValidationMode::strict),
                       doctest::Contains("ratings[0]"), ValidationError);
}

TEST_CASE("matrix CSV with upper triangle only") {
  const auto m = parse_matrix_csv("row_id,col_id,l,m,u\nA,B,2,3,4\nA,C,1,1,1\nB,C,0.25,0.5,1\n",
                                  ValidationMode::strict);
  CHECK(m.size() == 3);
  CHECK(m.criteria()[2].id == "C");
  CHECK(m.at(1, 0) == Tfn{0.25, 1.0 / 3, 0.5});
  CHECK(m.at(2, 1) == Tfn{1, 2, 4});
  CHECK(m.at(2, 2) == Tfn{1, 1, 1});
  CHECK_THROWS_WITH_AS(parse_matrix_csv("row_id,col_id,l,m,u\nA,B,2,x,4\n", ValidationMode::strict),
                       doctest::Contains("line 2: field 'm'"), ValidationError);
  CHECK_THROWS_AS(parse_matrix_csv("row,col,l,m,u\n", ValidationMode::strict), ValidationError);
  CHECK_THROWS_AS(parse_matrix_csv("row_id,col_id,l,m,u\n", ValidationMode::strict), ValidationError);
}

TEST_CASE("matrix JSON") {
  const char* doc = R"({"criteria": ["A", {"id": "B", "name": "bee"}], "mode": "lenient",
                        "cells": [{"row": "A", "col": "B", "tfn": [2, 3, 4]}]})";
  const auto m = parse_matrix_json(doc, std::nullopt);
  CHECK(m.mode() == ValidationMode::lenient);
  CHECK(m.criteria()[1].name == "bee");
  CHECK(m.at(1, 0) == Tfn{0.25, 1.0 / 3, 0.5});
  CHECK(parse_matrix_json(doc, ValidationMode::strict).mode() == ValidationMode::strict);
  CHECK_THROWS_AS(parse_matrix_json(R"({"cells": []})", std::nullopt), ValidationError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"criteria": ["A"], "mode": 3})", std::nullopt), ValidationError);
}

TEST_CASE("format_exact round trips") {
  for (double v : {0.1, 1.0 / 3, 0.125, 7.237624155400388, 1e-300, 12345678.9}) {
    CHECK(std::stod(format_exact(v)) == v);
  }
  CHECK(format_exact(0.25) == "0.25");
  CHECK(format_exact(9.0) == "9");
}

TEST_CASE("export round trip of the reference tables") {
  const auto study = load_reference_study();
  const auto& panel = study.delphi_panel;
  const auto& matrix = study.fahp_matrix;

  const auto from_csv = parse_ratings_csv(ratings_to_csv(panel), LinguisticScale::delphi10(), ValidationMode::strict);
  const auto from_json = parse_ratings_json(ratings_to_json(panel, "delphi-10"), std::nullopt, ValidationMode::strict);
  for (std::size_t b = 0; b < panel.barrier_count(); ++b) {
    for (std::size_t e = 0; e < panel.expert_count(); ++e) {
      CHECK(from_csv.rating(b, e) == panel.rating(b, e));
      CHECK(from_json.rating(b, e) == panel.rating(b, e));
    }
  }
  CHECK(from_json.barriers() == panel.barriers());

  const auto m_csv = parse_matrix_csv(matrix_to_csv(matrix), ValidationMode::lenient);
  const auto m_json = parse_matrix_json(matrix_to_json(matrix), std::nullopt);
  CHECK(m_csv.cells() == matrix.cells());
  CHECK(m_json.cells() == matrix.cells());
  CHECK(m_json.mode() == ValidationMode::lenient);
  CHECK(m_json.criteria() == matrix.criteria());
}

TEST_CASE("file helpers") {
  const auto dir = scratch_dir();
  write_file(dir / "x.txt", "hello\n");
  CHECK(read_file(dir / "x.txt") == "hello\n");
  CHECK_THROWS_AS(read_file(dir / "missing.csv"), IoError);
  CHECK_THROWS_AS(write_file(dir / "no" / "such" / "dir.txt", "x"), IoError);
  CHECK_THROWS_AS(load_ratings(dir / "missing.csv", InputFormat::csv, std::nullopt, ValidationMode::strict), IoError);
  fs::remove_all(dir);
}
