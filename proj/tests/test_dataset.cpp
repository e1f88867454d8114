#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "gradebayes/dataset.hpp"
#include "gradebayes/error.hpp"
#include "helpers.hpp"

using namespace gradebayes;
using gbtest::dataset_from_rows;
using gbtest::pred;
using gbtest::resp;

namespace {

Schema med_schema() {
  return Schema({pred("Med", {"Hindi", "English", "Mix"}),
                 resp("GObt", {"First", "Second", "Third", "Fail"})});
}

Dataset load_str(const std::string& text, const Schema& schema,
                 LoadOptions options = {}, int* skipped = nullptr) {
  std::istringstream in(text);
  return load_csv(in, schema, options, skipped);
}

std::vector<std::vector<int>> sorted_rows(const Dataset& d) {
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < d.size(); ++i) {
    std::vector<int> row;
    for (int v = 0; v < d.schema().variable_count(); ++v) {
      row.push_back(d.code(i, v));
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST_CASE("load_csv reads a minimal file") {
  const Dataset d = load_str("Med,GObt\nHindi,First\n", med_schema());
  REQUIRE(d.size() == 1);
  CHECK(d.label(0, 0) == "Hindi");
  CHECK(d.label(0, 1) == "First");
}

TEST_CASE("load_csv accepts any column order and the missing token") {
  const Dataset d = load_str("GObt,Med\nFirst,?\n", med_schema());
  REQUIRE(d.size() == 1);
  CHECK(d.code(0, 0) == kMissing);
  CHECK(d.label(0, 0) == "?");
  CHECK(d.label(0, 1) == "First");
}

TEST_CASE("load_csv discretizes numeric cells of band-carrying variables") {
  const Schema b = builtin_student_schema();
  const Schema schema({b.variable(b.index_of("GSS")), b.response()});
  const Dataset d = load_str("GSS,GObt\n92,61.5\nB,Fail\n", schema);
  REQUIRE(d.size() == 2);
  CHECK(d.label(0, 0) == "O");
  CHECK(d.label(0, 1) == "First");
  CHECK(d.label(1, 0) == "B");
  CHECK(d.label(1, 1) == "Fail");
}

TEST_CASE("load_csv errors carry row and variable context") {
  CHECK_THROWS_AS(load_str("Med,GObt\nFrench,First\n", med_schema()),
                  ValidationError);
  try {
    load_str("Med,GObt\nHindi,First\nFrench,Second\n", med_schema());
    FAIL("expected a domain violation");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("Med") != std::string::npos);
    CHECK(msg.find("French") != std::string::npos);
  }

  const Schema b = builtin_student_schema();
  const Schema gs({b.variable(b.index_of("GSS")), b.response()});
  CHECK_THROWS_AS(load_str("GSS,GObt\n9x2,First\n", gs), ValidationError);
  CHECK_THROWS_AS(load_str("GSS,GObt\n150,First\n", gs), ValidationError);
  CHECK_THROWS_AS(load_str("Med,GObt\nHindi\n", med_schema()),
                  ValidationError);
  try {
    load_str("GSS,GObt\n9x2,First\n", gs);
    FAIL("expected a cell error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 1") != std::string::npos);
    CHECK(msg.find("percentage") != std::string::npos);
  }
}

TEST_CASE("load_csv tolerates a UTF-8 BOM") {
  const Dataset d =
      load_str("\xEF\xBB\xBFMed,GObt\nHindi,First\n", med_schema());
  REQUIRE(d.size() == 1);
  CHECK(d.label(0, 0) == "Hindi");
}

TEST_CASE("load_csv rejects headers that do not match the schema") {
  CHECK_THROWS_AS(load_str("Med,Nope\nHindi,First\n", med_schema()),
                  ValidationError);
  CHECK_THROWS_AS(load_str("Med\nHindi\n", med_schema()), ValidationError);
  CHECK_THROWS_AS(load_str("Med,GObt,Med\nHindi,First,Mix\n", med_schema()),
                  ValidationError);
  try {
    load_str("Med,Nope\nHindi,First\n", med_schema());
    FAIL("expected a header mismatch");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("Nope") != std::string::npos);
  }
}

TEST_CASE("skip-invalid counts dropped rows and keeps the rest") {
  int skipped = 0;
  const Dataset d =
      load_str("Med,GObt\nHindi,First\nFrench,First\nMix,Fail\n", med_schema(),
               LoadOptions{true}, &skipped);
  CHECK(skipped == 1);
  REQUIRE(d.size() == 2);
  CHECK(d.label(1, 0) == "Mix");
}

TEST_CASE("quoted cells survive a round trip") {
  const Schema schema(
      {pred("a", {"x,1", "plain", "say \"hi\""}), resp("y", {"c0", "c1"})});
  std::ostringstream out;
  write_csv(dataset_from_rows(schema, {{"x,1", "c0"}, {"say \"hi\"", "c1"}}),
            out);
  const Dataset back = load_str(out.str(), schema);
  REQUIRE(back.size() == 2);
  CHECK(back.label(0, 0) == "x,1");
  CHECK(back.label(1, 0) == "say \"hi\"");
  CHECK_THROWS_AS(load_str("a,y\n\"broken,c0\n", schema), FormatError);
}

TEST_CASE("csv round trip normalizes column order and preserves records") {
  const Dataset d = load_str("GObt,Med\nFirst,Hindi\nSecond,?\nFail,Mix\n",
                             med_schema());
  std::ostringstream out;
  write_csv(d, out);
  CHECK(out.str().rfind("Med,GObt\n", 0) == 0);
  const Dataset back = load_str(out.str(), med_schema());
  CHECK(back.codes() == d.codes());
}

TEST_CASE("csv round trip holds for random datasets") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const Schema schema = gbtest::random_schema(rng);
    const Dataset d = gbtest::random_dataset(schema, rng, 20, 0.3);
    std::ostringstream out;
    write_csv(d, out);
    std::istringstream in(out.str());
    CHECK(load_csv(in, schema).codes() == d.codes());
  }
}

TEST_CASE("split_folds sizes, determinism and partition") {
  const Schema schema({pred("x", {"v0", "v1", "v2", "v3"}),
                       resp("y", {"c0", "c1"})});
  Eigen::MatrixXi m(10, 2);
  for (int i = 0; i < 10; ++i) {
    m(i, 0) = i % 4;
    m(i, 1) = i % 2;
  }
  const Dataset ten(schema, m);

  const auto folds = split_folds(ten, 5, 42);
  REQUIRE(folds.size() == 5);
  for (const Dataset& f : folds) CHECK(f.size() == 2);

  Eigen::MatrixXi eleven(11, 2);
  for (int i = 0; i < 11; ++i) {
    eleven(i, 0) = i % 4;
    eleven(i, 1) = i % 2;
  }
  const Dataset d11(schema, eleven);
  const auto folds11 = split_folds(d11, 5, 42);
  std::vector<int> sizes;
  for (const Dataset& f : folds11) sizes.push_back(f.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{2, 2, 2, 2, 3});

  // determinism
  const auto again = split_folds(d11, 5, 42);
  for (size_t f = 0; f < folds11.size(); ++f) {
    CHECK(folds11[f].codes() == again[f].codes());
  }

  // partition: fold rows are exactly the input rows
  std::vector<std::vector<int>> pooled;
  for (const Dataset& f : folds11) {
    for (const auto& row : sorted_rows(f)) pooled.push_back(row);
  }
  std::sort(pooled.begin(), pooled.end());
  CHECK(pooled == sorted_rows(d11));

  CHECK_THROWS_AS(split_folds(d11, 1, 42), ValidationError);
  CHECK_THROWS_AS(split_folds(d11, 12, 42), ValidationError);
}

TEST_CASE("restrict projects predictors and keeps every record") {
  const Schema schema({pred("a", {"x", "y"}), pred("b", {"u", "v"}),
                       pred("c", {"p", "q"}), resp("y0", {"c0", "c1"})});
  const Dataset d = dataset_from_rows(schema, {{"x", "u", "p", "c0"},
                                               {"y", "v", "q", "c1"},
                                               {"x", "v", "p", "c1"}});

  const Dataset all = restrict(d, {"a", "b", "c"});
  CHECK(all.schema() == schema);
  CHECK(all.codes() == d.codes());

  const Dataset none = restrict(d, {});
  CHECK(none.schema().variable_count() == 1);
  CHECK(none.schema().response().name == "y0");
  CHECK(none.size() == 3);

  const Dataset just_b = restrict(d, {"b"});
  CHECK(just_b.schema().variable_count() == 2);
  CHECK(just_b.schema().variable(0).name == "b");
  CHECK(just_b.size() == 3);
  CHECK(just_b.label(1, 0) == "v");

  // composition
  const Dataset ab_then_b = restrict(restrict(d, {"a", "b"}), {"b"});
  CHECK(ab_then_b.schema() == just_b.schema());
  CHECK(ab_then_b.codes() == just_b.codes());

  CHECK_THROWS_AS(restrict(d, {"nope"}), ValidationError);
  CHECK_THROWS_AS(restrict(d, {"y0"}), ValidationError);
}

TEST_CASE("record_from_labels fills unnamed variables as missing") {
  const Schema schema = med_schema();
  const Record r = record_from_labels(schema, {{"Med", "Mix"}});
  CHECK(r.codes[0] == 2);
  CHECK(r.codes[1] == kMissing);
  CHECK_THROWS_AS(record_from_labels(schema, {{"Nope", "x"}}),
                  ValidationError);
}
