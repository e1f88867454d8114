#include "gradebayes/evalreport.hpp"

#include <ostream>

#include "gradebayes/error.hpp"
#include "text_util.hpp"

namespace gradebayes {

namespace {

EvalReport report_from_confusion(const Schema& schema,
                                 Eigen::MatrixXi confusion) {
  EvalReport report;
  report.classes = schema.response().domain;
  report.n_eval = confusion.sum();
  report.accuracy =
      static_cast<double>(confusion.trace()) / report.n_eval;
  const int classes = static_cast<int>(report.classes.size());
  report.per_class.resize(classes);
  for (int c = 0; c < classes; ++c) {
    const int true_total = confusion.row(c).sum();
    const int predicted_total = confusion.col(c).sum();
    ClassMetrics& m = report.per_class[c];
    if (predicted_total > 0) {
      m.precision = static_cast<double>(confusion(c, c)) / predicted_total;
      m.precision_defined = true;
    }
    if (true_total > 0) {
      m.recall = static_cast<double>(confusion(c, c)) / true_total;
      m.recall_defined = true;
    }
  }
  report.confusion = std::move(confusion);
  return report;
}

}  // namespace

EvalReport evaluate(const NBModel& model, const Dataset& data) {
  if (data.size() == 0) throw ValidationError("evaluate: dataset is empty");
  const Schema& schema = model.schema();
  const int response = schema.response_index();
  const int classes = schema.class_count();
  Eigen::MatrixXi confusion = Eigen::MatrixXi::Zero(classes, classes);
  for (int i = 0; i < data.size(); ++i) {
    const int truth = data.code(i, response);
    if (truth == kMissing) {
      throw ValidationError("evaluate: record " + std::to_string(i) +
                            " has a missing response");
    }
    confusion(truth, predict_code(model, data.record(i)))++;
  }
  return report_from_confusion(schema, std::move(confusion));
}

EvalReport cross_validate(const Dataset& data, int k, double alpha,
                          std::uint64_t seed) {
  const std::vector<Dataset> folds = split_folds(data, k, seed);
  const Schema& schema = data.schema();
  const int response = schema.response_index();
  const int classes = schema.class_count();
  const int vars = schema.variable_count();

  Eigen::MatrixXi confusion = Eigen::MatrixXi::Zero(classes, classes);
  std::vector<double> fold_accuracies;
  fold_accuracies.reserve(k);
  for (int held_out = 0; held_out < k; ++held_out) {
    int train_rows = 0;
    for (int f = 0; f < k; ++f) {
      if (f != held_out) train_rows += folds[f].size();
    }
    Eigen::MatrixXi train_codes(train_rows, vars);
    int at = 0;
    for (int f = 0; f < k; ++f) {
      if (f == held_out) continue;
      train_codes.middleRows(at, folds[f].size()) = folds[f].codes();
      at += folds[f].size();
    }
    const NBModel model = train(Dataset(schema, std::move(train_codes)), alpha);

    const Dataset& test = folds[held_out];
    int hits = 0;
    for (int i = 0; i < test.size(); ++i) {
      const int truth = test.code(i, response);
      const int predicted = predict_code(model, test.record(i));
      confusion(truth, predicted)++;
      if (predicted == truth) ++hits;
    }
    fold_accuracies.push_back(static_cast<double>(hits) / test.size());
  }
  EvalReport report = report_from_confusion(schema, std::move(confusion));
  report.fold_accuracies = std::move(fold_accuracies);
  return report;
}

ContingencyTable contingency(const Dataset& data,
                             const std::string& variable) {
  const Schema& schema = data.schema();
  const int v = schema.index_of(variable);
  if (v < 0) {
    throw ValidationError("contingency: unknown variable '" + variable + "'");
  }
  if (v == schema.response_index()) {
    throw ValidationError("contingency: '" + variable +
                          "' is the response, not a predictor");
  }
  const int response = schema.response_index();
  ContingencyTable table;
  table.variable = variable;
  table.values = schema.variable(v).domain;
  table.classes = schema.response().domain;
  table.cells = Eigen::MatrixXi::Zero(static_cast<int>(table.values.size()),
                                      static_cast<int>(table.classes.size()));
  for (int i = 0; i < data.size(); ++i) {
    const int value = data.code(i, v);
    const int cls = data.code(i, response);
    if (value == kMissing || cls == kMissing) {
      ++table.excluded;
      continue;
    }
    table.cells(value, cls)++;
  }
  table.value_marginals = table.cells.rowwise().sum();
  table.class_marginals = table.cells.colwise().sum().transpose();
  return table;
}

std::string format_text(const EvalReport& report) {
  std::string out;
  out += "n evaluated: " + std::to_string(report.n_eval) + "\n";
  out += "accuracy:    " + detail::fixed(report.accuracy, 4) + "\n";
  if (!report.fold_accuracies.empty()) {
    out += "fold accuracies:";
    for (double a : report.fold_accuracies) {
      out += " " + detail::fixed(a, 4);
    }
    out += "\n";
  }
  size_t width = 4;
  for (const auto& c : report.classes) width = std::max(width, c.size());
  out += "\nconfusion (rows = true, cols = predicted)\n";
  out += detail::pad("", width + 2);
  for (const auto& c : report.classes) out += detail::rpad(c, width + 2);
  out += "\n";
  for (size_t t = 0; t < report.classes.size(); ++t) {
    out += detail::pad(report.classes[t], width + 2);
    for (size_t p = 0; p < report.classes.size(); ++p) {
      out += detail::rpad(
          std::to_string(report.confusion(static_cast<int>(t),
                                          static_cast<int>(p))),
          width + 2);
    }
    out += "\n";
  }
  out += "\nper-class metrics (precision / recall, '-' = undefined)\n";
  for (size_t c = 0; c < report.classes.size(); ++c) {
    const ClassMetrics& m = report.per_class[c];
    out += detail::pad(report.classes[c], width + 2);
    out += m.precision_defined ? detail::fixed(m.precision, 4)
                               : std::string("-");
    out += "  ";
    out += m.recall_defined ? detail::fixed(m.recall, 4) : std::string("-");
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["n_eval"] = report.n_eval;
  j["accuracy"] = report.accuracy;
  j["classes"] = report.classes;
  nlohmann::ordered_json confusion = nlohmann::ordered_json::array();
  for (int t = 0; t < report.confusion.rows(); ++t) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int p = 0; p < report.confusion.cols(); ++p) {
      row.push_back(report.confusion(t, p));
    }
    confusion.push_back(std::move(row));
  }
  j["confusion"] = std::move(confusion);
  nlohmann::ordered_json per_class;
  for (size_t c = 0; c < report.classes.size(); ++c) {
    const ClassMetrics& m = report.per_class[c];
    per_class[report.classes[c]] = {{"precision", m.precision},
                                    {"precision_defined", m.precision_defined},
                                    {"recall", m.recall},
                                    {"recall_defined", m.recall_defined}};
  }
  j["per_class"] = std::move(per_class);
  if (!report.fold_accuracies.empty()) {
    j["fold_accuracies"] = report.fold_accuracies;
  }
  return j;
}

std::string format_text(const ContingencyTable& table) {
  size_t width = 5;  // "total"
  for (const auto& v : table.values) width = std::max(width, v.size());
  for (const auto& c : table.classes) width = std::max(width, c.size());
  std::string out = "crosstab of " + table.variable +
                    " vs response (excluded rows: " +
                    std::to_string(table.excluded) + ")\n";
  out += detail::pad("", width + 2);
  for (const auto& c : table.classes) out += detail::rpad(c, width + 2);
  out += detail::rpad("total", width + 2) + "\n";
  for (size_t v = 0; v < table.values.size(); ++v) {
    out += detail::pad(table.values[v], width + 2);
    for (size_t c = 0; c < table.classes.size(); ++c) {
      out += detail::rpad(std::to_string(table.cells(static_cast<int>(v),
                                                     static_cast<int>(c))),
                          width + 2);
    }
    out += detail::rpad(std::to_string(table.value_marginals[static_cast<int>(v)]),
                        width + 2);
    out += "\n";
  }
  out += detail::pad("total", width + 2);
  for (size_t c = 0; c < table.classes.size(); ++c) {
    out += detail::rpad(std::to_string(table.class_marginals[static_cast<int>(c)]),
                        width + 2);
  }
  out += detail::rpad(std::to_string(table.cells.sum()), width + 2) + "\n";
  return out;
}

nlohmann::ordered_json to_json(const ContingencyTable& table) {
  nlohmann::ordered_json j;
  j["variable"] = table.variable;
  j["classes"] = table.classes;
  j["excluded"] = table.excluded;
  nlohmann::ordered_json cells;
  for (size_t v = 0; v < table.values.size(); ++v) {
    nlohmann::ordered_json row;
    for (size_t c = 0; c < table.classes.size(); ++c) {
      row[table.classes[c]] = table.cells(static_cast<int>(v),
                                          static_cast<int>(c));
    }
    cells[table.values[v]] = std::move(row);
  }
  j["cells"] = std::move(cells);
  nlohmann::ordered_json value_marginals;
  for (size_t v = 0; v < table.values.size(); ++v) {
    value_marginals[table.values[v]] = table.value_marginals[static_cast<int>(v)];
  }
  j["value_marginals"] = std::move(value_marginals);
  nlohmann::ordered_json class_marginals;
  for (size_t c = 0; c < table.classes.size(); ++c) {
    class_marginals[table.classes[c]] = table.class_marginals[static_cast<int>(c)];
  }
  j["class_marginals"] = std::move(class_marginals);
  return j;
}

void write_csv(const ContingencyTable& table, std::ostream& out) {
  out << table.variable;
  for (const auto& c : table.classes) out << ',' << c;
  out << '\n';
  for (size_t v = 0; v < table.values.size(); ++v) {
    out << table.values[v];
    for (size_t c = 0; c < table.classes.size(); ++c) {
      out << ',' << table.cells(static_cast<int>(v), static_cast<int>(c));
    }
    out << '\n';
  }
}

}  // namespace gradebayes
