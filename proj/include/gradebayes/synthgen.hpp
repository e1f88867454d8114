#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "gradebayes/dataset.hpp"
#include "gradebayes/schema.hpp"

namespace gradebayes {

/// Recipe for a seeded synthetic cohort. Planted predictors are drawn from
/// class-conditional tables; every other predictor is uniform over its
/// domain, independent of the class. Generation is a pure function of
/// (schema, spec).
struct PlantSpec {
  int n = 0;
  std::uint64_t seed = 0;
  /// Distribution over the response classes, response-domain order.
  Eigen::ArrayXd response_marginal;
  /// Predictor name -> (class count x domain size) table of P(value|class).
  std::map<std::string, Eigen::ArrayXXd> planted;
  /// Predictor name -> probability of replacing a drawn value by missing.
  /// Absent entries mean 0. The response is never made missing.
  std::map<std::string, double> missing_rates;

  /// Throws ValidationError naming the offending table when any
  /// distribution is invalid against the schema.
  void validate(const Schema& schema) const;

  /// JSON form: {"n", "seed", "response_marginal": {class: p, ...},
  /// "planted": {var: {class: {value: p, ...}}}, "missing_rate": number or
  /// {var: rate}}. Structural problems throw FormatError.
  static PlantSpec from_json(const nlohmann::ordered_json& j,
                             const Schema& schema);

  nlohmann::ordered_json to_json(const Schema& schema) const;
};

/// Draws `spec.n` records. Each (record, variable) pair uses its own
/// substream (see rng.hpp): one uniform deviate picks the value by inverse
/// CDF, a second decides missingness, so the output is independent of
/// iteration order.
Dataset generate(const Schema& schema, const PlantSpec& spec);

/// The default cohort recipe for the built-in student schema: n=300,
/// seed=42, response marginal {First .40, Second .35, Third .15, Fail .10},
/// strong planted dependence on GSS, weaker on LLoc and Med, everything
/// else uniform, no missing values.
PlantSpec default_plant_spec();

}  // namespace gradebayes
