#include <doctest.h>

#include "gradebayes/error.hpp"
#include "gradebayes/schema.hpp"
#include "helpers.hpp"

using namespace gradebayes;
using gbtest::pred;
using gbtest::resp;

TEST_CASE("builtin schema matches the student dictionary") {
  const Schema s = builtin_student_schema();
  CHECK(s.variable_count() == 17);
  CHECK(s.predictor_count() == 16);
  CHECK(s.response().name == "GObt");
  CHECK(s.response().role == Role::response);
  CHECK(s.response().domain ==
        std::vector<std::string>{"First", "Second", "Third", "Fail"});
  const VariableSpec& med = s.variable(s.index_of("Med"));
  CHECK(med.role == Role::predictor);
  CHECK(med.domain == std::vector<std::string>{"Hindi", "English", "Mix"});
  CHECK(s.variable(s.index_of("GSS")).bands.size() == 7);
  CHECK(s.response().bands.size() == 4);
  CHECK(s.variable(s.index_of("FSize")).domain ==
        std::vector<std::string>{"1", "2", "3", ">3"});
}

TEST_CASE("builtin schema is deterministic, also as JSON bytes") {
  const Schema a = builtin_student_schema();
  const Schema b = builtin_student_schema();
  CHECK(a == b);
  CHECK(a.to_json().dump(2) == b.to_json().dump(2));
}

TEST_CASE("discretize maps marks to bands") {
  const Schema s = builtin_student_schema();
  const VariableSpec& gss = s.variable(s.index_of("GSS"));
  const VariableSpec& gobt = s.response();
  CHECK(discretize(95, gss) == "O");
  CHECK(discretize(0, gss) == "F");
  CHECK(discretize(100, gss) == "O");
  CHECK(discretize(61, gobt) == "First");
  CHECK(discretize(44.9, gobt) == "Third");
  CHECK(discretize(45, gobt) == "Second");
  CHECK(discretize(36, gobt) == "Third");
  CHECK(discretize(35.99, gobt) == "Fail");
  CHECK(discretize(100, gobt) == "First");
}

TEST_CASE("discretize rejects out-of-range marks and plain variables") {
  const Schema s = builtin_student_schema();
  CHECK_THROWS_AS(discretize(101, s.variable(s.index_of("GSS"))),
                  ValidationError);
  CHECK_THROWS_AS(discretize(-0.5, s.response()), ValidationError);
  CHECK_THROWS_AS(discretize(50, s.variable(s.index_of("Med"))), UsageError);
}

TEST_CASE("discretize is total on [0,100] and boundaries go up") {
  const Schema s = builtin_student_schema();
  for (const char* name : {"GSS", "GObt"}) {
    const VariableSpec& spec = s.variable(s.index_of(name));
    for (int i = 0; i <= 1000; ++i) {
      const std::string label = discretize(i / 10.0, spec);
      CHECK(spec.code_of(label) >= 0);
    }
    for (const Band& band : spec.bands) {
      CHECK(discretize(band.min, spec) == band.label);
    }
  }
}

TEST_CASE("validate_value matches after trim, case-sensitively") {
  const Schema s = builtin_student_schema();
  const VariableSpec& med = s.variable(s.index_of("Med"));
  CHECK(validate_value(med, "Hindi") == 0);
  CHECK(validate_value(med, "  English \t") == 1);
  CHECK(validate_value(med, "?") == kMissing);
  CHECK_THROWS_AS(validate_value(med, "French"), ValidationError);
  CHECK_THROWS_AS(validate_value(med, "hindi"), ValidationError);
  try {
    validate_value(med, "French");
    FAIL("expected a domain violation");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("Med") != std::string::npos);
    CHECK(msg.find("French") != std::string::npos);
    CHECK(msg.find("Hindi") != std::string::npos);
  }
}

TEST_CASE("schema construction enforces the invariants") {
  CHECK_THROWS_AS(Schema({pred("a", {"x", "y"}), pred("a", {"x", "y"}),
                          resp("y", {"c", "d"})}),
                  ValidationError);
  CHECK_THROWS_AS(Schema({pred("a", {"x", "y"})}), ValidationError);
  CHECK_THROWS_AS(Schema({resp("a", {"x", "y"}), resp("b", {"x", "y"})}),
                  ValidationError);
  CHECK_THROWS_AS(Schema({resp("a", {"x", "x"})}), ValidationError);
  CHECK_THROWS_AS(Schema({resp("a", {"x"})}), ValidationError);
  CHECK_THROWS_AS(Schema({resp("a", {"x", ""})}), ValidationError);

  // bands: must start at 0, ascend strictly, use domain labels
  CHECK_THROWS_AS(
      Schema({VariableSpec{"g", Role::predictor, {"lo", "hi"},
                           {{10.0, "lo"}, {50.0, "hi"}}},
              resp("y", {"c", "d"})}),
      ValidationError);
  CHECK_THROWS_AS(
      Schema({VariableSpec{"g", Role::predictor, {"lo", "hi"},
                           {{0.0, "lo"}, {50.0, "nope"}}},
              resp("y", {"c", "d"})}),
      ValidationError);
  CHECK_THROWS_AS(
      Schema({VariableSpec{"g", Role::predictor, {"lo", "hi"},
                           {{0.0, "lo"}, {0.0, "hi"}}},
              resp("y", {"c", "d"})}),
      ValidationError);
}

TEST_CASE("schema JSON round trip") {
  const Schema s = builtin_student_schema();
  CHECK(Schema::from_json(s.to_json()) == s);
  CHECK_THROWS_AS(Schema::from_json(nlohmann::ordered_json{{"nope", 1}}),
                  FormatError);
}
