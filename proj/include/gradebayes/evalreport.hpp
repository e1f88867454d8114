#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "gradebayes/dataset.hpp"
#include "gradebayes/nbayes.hpp"

namespace gradebayes {

/// Precision/recall for one class. When a class never appears in the
/// predictions (or the truth), the ratio is reported as 0 with the defined
/// flag cleared instead of NaN.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  bool precision_defined = false;
  bool recall_defined = false;
};

struct EvalReport {
  std::vector<std::string> classes;  // response-domain order
  Eigen::MatrixXi confusion;         // rows = true class, cols = predicted
  double accuracy = 0.0;
  int n_eval = 0;
  std::vector<ClassMetrics> per_class;
  /// Per-fold accuracies; empty for a plain (non-cross-validated) report.
  std::vector<double> fold_accuracies;
};

/// Predicts every record and tallies the confusion matrix. Records must
/// carry a non-missing response.
EvalReport evaluate(const NBModel& model, const Dataset& data);

/// k-fold cross-validation: trains on k-1 folds, predicts the held-out
/// fold, and pools every prediction into one report. Fold assignment comes
/// from split_folds(data, k, seed); metrics are pooled, not fold-averaged.
EvalReport cross_validate(const Dataset& data, int k, double alpha,
                          std::uint64_t seed);

/// Exact cross-tab of one predictor's values against the response classes.
/// Records missing the predictor or the response are excluded and counted.
struct ContingencyTable {
  std::string variable;
  std::vector<std::string> values;   // predictor-domain order
  std::vector<std::string> classes;  // response-domain order
  Eigen::MatrixXi cells;             // rows = values, cols = classes
  Eigen::VectorXi value_marginals;   // per value, sum over classes
  Eigen::VectorXi class_marginals;   // per class, sum over values
  int excluded = 0;
};

ContingencyTable contingency(const Dataset& data, const std::string& variable);

std::string format_text(const EvalReport& report);
nlohmann::ordered_json to_json(const EvalReport& report);

std::string format_text(const ContingencyTable& table);
nlohmann::ordered_json to_json(const ContingencyTable& table);

/// CSV form: header `variable,class...`, one row per predictor value.
void write_csv(const ContingencyTable& table, std::ostream& out);

}  // namespace gradebayes
