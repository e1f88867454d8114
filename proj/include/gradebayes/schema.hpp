#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gradebayes {

/// Value code used for an absent cell, everywhere codes appear.
inline constexpr int kMissing = -1;

/// Token that marks a missing cell in data files.
inline constexpr std::string_view kMissingToken = "?";

enum class Role { predictor, response };

/// One band of a percentage-to-grade map. A band covers [min, next band's
/// min); the topmost band is closed at 100.
struct Band {
  double min = 0.0;
  std::string label;

  bool operator==(const Band&) const = default;
};

struct VariableSpec {
  std::string name;
  Role role = Role::predictor;
  std::vector<std::string> domain;
  std::vector<Band> bands;  // empty when the variable carries no discretizer

  bool has_discretizer() const { return !bands.empty(); }
  int domain_size() const { return static_cast<int>(domain.size()); }

  /// Index of `label` in the domain, -1 when absent. Exact match.
  int code_of(std::string_view label) const;

  bool operator==(const VariableSpec&) const = default;
};

/// Immutable, validated variable dictionary. The constructor enforces:
/// unique non-empty variable names, exactly one response, domains of at
/// least two unique non-empty labels, and discretizer bands that are
/// strictly ascending, start at 0, stay within [0,100] and use domain
/// labels only.
class Schema {
 public:
  explicit Schema(std::vector<VariableSpec> variables);

  const std::vector<VariableSpec>& variables() const { return variables_; }
  const VariableSpec& variable(int index) const { return variables_[index]; }
  int variable_count() const { return static_cast<int>(variables_.size()); }

  /// Index of the named variable, -1 when absent.
  int index_of(std::string_view name) const;

  int response_index() const { return response_index_; }
  const VariableSpec& response() const { return variables_[response_index_]; }
  int class_count() const { return response().domain_size(); }

  std::vector<int> predictor_indices() const;
  int predictor_count() const { return variable_count() - 1; }

  nlohmann::ordered_json to_json() const;
  static Schema from_json(const nlohmann::ordered_json& j);

  bool operator==(const Schema& other) const {
    return variables_ == other.variables_;
  }

 private:
  std::vector<VariableSpec> variables_;
  int response_index_ = -1;
};

/// The built-in student dictionary: 16 categorical predictors plus the
/// GObt response; GSS and GObt carry percentage band maps. Deterministic.
Schema builtin_student_schema();

/// Maps a percentage mark to its band label. Bands are lower-inclusive,
/// half-open; 100 falls into the topmost band. Throws UsageError when the
/// spec has no discretizer and ValidationError when pct is outside [0,100].
std::string discretize(double pct, const VariableSpec& spec);

/// Matches a raw cell against the domain after trimming surrounding
/// whitespace. Returns the value code, kMissing for the missing token, and
/// throws ValidationError (naming variable, value and domain) otherwise.
/// Matching is case-sensitive.
int validate_value(const VariableSpec& spec, std::string_view raw);

/// Copy of `s` without leading/trailing ASCII whitespace.
std::string trim(std::string_view s);

}  // namespace gradebayes
