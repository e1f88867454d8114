#pragma once

#include <string>
#include <vector>

#include "gradebayes/dataset.hpp"
#include "gradebayes/rng.hpp"
#include "gradebayes/schema.hpp"

namespace gbtest {

using namespace gradebayes;

inline VariableSpec pred(std::string name, std::vector<std::string> domain) {
  return VariableSpec{std::move(name), Role::predictor, std::move(domain), {}};
}

inline VariableSpec resp(std::string name, std::vector<std::string> domain) {
  return VariableSpec{std::move(name), Role::response, std::move(domain), {}};
}

inline Dataset dataset_from_rows(
    const Schema& schema, const std::vector<std::vector<std::string>>& rows) {
  Eigen::MatrixXi codes(static_cast<int>(rows.size()),
                        schema.variable_count());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int v = 0; v < schema.variable_count(); ++v) {
      codes(static_cast<int>(i), v) =
          validate_value(schema.variable(v), rows[i][v]);
    }
  }
  return Dataset(schema, std::move(codes));
}

/// Small random schema: 1..max_predictors predictors with 2..4 values each,
/// 2..max_classes response classes. Variables x0.., response y.
inline Schema random_schema(SplitMix64& rng, int max_predictors = 3,
                            int max_classes = 3) {
  const int predictors = 1 + static_cast<int>(rng.next_below(max_predictors));
  std::vector<VariableSpec> vars;
  for (int i = 0; i < predictors; ++i) {
    const int m = 2 + static_cast<int>(rng.next_below(3));
    std::vector<std::string> domain;
    for (int j = 0; j < m; ++j) domain.push_back("v" + std::to_string(j));
    vars.push_back(pred("x" + std::to_string(i), std::move(domain)));
  }
  const int classes = 2 + static_cast<int>(rng.next_below(max_classes - 1));
  std::vector<std::string> labels;
  for (int j = 0; j < classes; ++j) labels.push_back("c" + std::to_string(j));
  vars.push_back(resp("y", std::move(labels)));
  return Schema(std::move(vars));
}

/// 1..max_records rows of uniform values; predictor cells go missing with
/// missing_rate, the response never does.
inline Dataset random_dataset(const Schema& schema, SplitMix64& rng,
                              int max_records = 20,
                              double missing_rate = 0.0) {
  const int n = 1 + static_cast<int>(rng.next_below(max_records));
  Eigen::MatrixXi codes(n, schema.variable_count());
  for (int i = 0; i < n; ++i) {
    for (int v = 0; v < schema.variable_count(); ++v) {
      int code = static_cast<int>(
          rng.next_below(schema.variable(v).domain_size()));
      if (v != schema.response_index() && missing_rate > 0.0 &&
          rng.next_unit() < missing_rate) {
        code = kMissing;
      }
      codes(i, v) = code;
    }
  }
  return Dataset(schema, std::move(codes));
}

inline Record random_record(const Schema& schema, SplitMix64& rng,
                            double missing_rate = 0.0) {
  Record r;
  r.codes.resize(schema.variable_count());
  for (int v = 0; v < schema.variable_count(); ++v) {
    int code =
        static_cast<int>(rng.next_below(schema.variable(v).domain_size()));
    if (missing_rate > 0.0 && rng.next_unit() < missing_rate) code = kMissing;
    r.codes[v] = code;
  }
  return r;
}

/// Record with the slot of variable `drop` removed.
inline Record project_record(const Record& record, int drop) {
  Record out;
  out.codes.resize(record.codes.size() - 1);
  int at = 0;
  for (int v = 0; v < record.codes.size(); ++v) {
    if (v != drop) out.codes[at++] = record.codes[v];
  }
  return out;
}

}  // namespace gbtest
