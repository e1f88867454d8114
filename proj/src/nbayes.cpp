#include "gradebayes/nbayes.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "gradebayes/error.hpp"

namespace gradebayes {

namespace {

constexpr double kSumTolerance = 1e-9;

}  // namespace

NBModel::NBModel(Schema schema, double alpha, Eigen::ArrayXd priors,
                 Eigen::VectorXi class_counts,
                 std::vector<Eigen::ArrayXXd> cpt, int n_train)
    : schema_(std::move(schema)),
      alpha_(alpha),
      priors_(std::move(priors)),
      class_counts_(std::move(class_counts)),
      cpt_(std::move(cpt)),
      n_train_(n_train) {
  const int classes = schema_.class_count();
  if (alpha_ < 0.0) throw ValidationError("model: alpha must be >= 0");
  if (n_train_ < 1) throw ValidationError("model: n_train must be >= 1");
  if (priors_.size() != classes || class_counts_.size() != classes) {
    throw ValidationError("model: prior/count size does not match the schema");
  }
  if (std::abs(priors_.sum() - 1.0) > kSumTolerance) {
    throw ValidationError("model: priors do not sum to 1");
  }
  if (static_cast<int>(cpt_.size()) != schema_.variable_count()) {
    throw ValidationError("model: CPT slot count does not match the schema");
  }
  for (int v = 0; v < schema_.variable_count(); ++v) {
    if (v == schema_.response_index()) {
      if (cpt_[v].size() != 0) {
        throw ValidationError("model: response slot must have no CPT");
      }
      continue;
    }
    const Eigen::ArrayXXd& table = cpt_[v];
    if (table.rows() != classes ||
        table.cols() != schema_.variable(v).domain_size()) {
      throw ValidationError("model: CPT shape mismatch for variable '" +
                            schema_.variable(v).name + "'");
    }
    for (int c = 0; c < classes; ++c) {
      if (std::abs(table.row(c).sum() - 1.0) > kSumTolerance) {
        throw ValidationError("model: CPT row for variable '" +
                              schema_.variable(v).name + "', class '" +
                              schema_.response().domain[c] +
                              "' does not sum to 1");
      }
    }
  }
  log_priors_ = priors_.log();
  log_cpt_.reserve(cpt_.size());
  for (const Eigen::ArrayXXd& table : cpt_) {
    log_cpt_.push_back(table.log());
  }
}

NBModel train(const Dataset& data, double alpha) {
  if (alpha < 0.0) throw ValidationError("train: alpha must be >= 0");
  const int n = data.size();
  if (n == 0) throw ValidationError("train: dataset is empty");
  const Schema& schema = data.schema();
  const int classes = schema.class_count();
  const int response = schema.response_index();

  Eigen::VectorXi class_counts = Eigen::VectorXi::Zero(classes);
  for (int i = 0; i < n; ++i) {
    const int c = data.code(i, response);
    if (c == kMissing) {
      throw ValidationError("train: record " + std::to_string(i) +
                            " has a missing response");
    }
    ++class_counts[c];
  }
  const Eigen::ArrayXd priors =
      class_counts.cast<double>().array() / static_cast<double>(n);

  std::vector<Eigen::ArrayXXd> cpt(schema.variable_count());
  for (int v = 0; v < schema.variable_count(); ++v) {
    if (v == response) continue;
    const int m = schema.variable(v).domain_size();
    Eigen::ArrayXXd counts = Eigen::ArrayXXd::Zero(classes, m);
    for (int i = 0; i < n; ++i) {
      const int value = data.code(i, v);
      if (value == kMissing) continue;
      counts(data.code(i, response), value) += 1.0;
    }
    Eigen::ArrayXXd table(classes, m);
    for (int c = 0; c < classes; ++c) {
      const double seen = counts.row(c).sum();
      const double denom = seen + alpha * m;
      if (denom == 0.0) {
        // alpha = 0 and no non-missing observations of v in this class.
        table.row(c).setConstant(1.0 / m);
      } else {
        table.row(c) = (counts.row(c) + alpha) / denom;
      }
    }
    cpt[v] = std::move(table);
  }
  return NBModel(schema, alpha, priors, std::move(class_counts),
                 std::move(cpt), n);
}

namespace {

// Classes whose log scores sit within this distance of the leader count as
// tied in predict. Floating-point noise on the accumulated sums stays near
// 1e-14 while genuinely different count ratios differ by far more, so the
// window separates the two cleanly and keeps the argmax stable when a
// class-constant factor shifts every score.
constexpr double kLogTieTolerance = 1e-12;

Eigen::ArrayXd class_log_scores(const NBModel& model, const Record& record,
                                std::vector<std::string>* used) {
  const Schema& schema = model.schema();
  if (record.codes.size() != schema.variable_count()) {
    throw ValidationError("posterior: record has " +
                          std::to_string(record.codes.size()) +
                          " values, schema expects " +
                          std::to_string(schema.variable_count()));
  }
  Eigen::ArrayXd log_scores = model.log_priors();
  for (int v = 0; v < schema.variable_count(); ++v) {
    if (v == schema.response_index()) continue;
    const int value = record.codes[v];
    if (value == kMissing) continue;
    if (value < 0 || value >= schema.variable(v).domain_size()) {
      throw ValidationError("posterior: variable '" + schema.variable(v).name +
                            "': value code " + std::to_string(value) +
                            " outside the domain");
    }
    log_scores += model.log_cpt(v).col(value);
    if (used != nullptr) used->push_back(schema.variable(v).name);
  }
  if (log_scores.maxCoeff() == -std::numeric_limits<double>::infinity()) {
    throw ValidationError(
        "posterior: every class has zero probability for this record "
        "(degenerate evidence at alpha=0)");
  }
  return log_scores;
}

}  // namespace

Posterior posterior(const NBModel& model, const Record& record) {
  std::vector<std::string> used;
  const Eigen::ArrayXd log_scores = class_log_scores(model, record, &used);
  if (used.empty()) {
    // Empty product: the posterior is the prior distribution, exactly.
    return Posterior{model.priors(), {}};
  }
  const double max_log = log_scores.maxCoeff();
  // Scalar std::exp: Eigen's packet exp clamps -inf to a denormal instead
  // of 0, which would leak mass onto zero-prior classes.
  Eigen::ArrayXd probs(log_scores.size());
  for (int c = 0; c < log_scores.size(); ++c) {
    probs[c] = std::exp(log_scores[c] - max_log);
  }
  probs /= probs.sum();
  return Posterior{std::move(probs), std::move(used)};
}

int predict_code(const NBModel& model, const Record& record) {
  const Eigen::ArrayXd log_scores = class_log_scores(model, record, nullptr);
  int best = 0;
  for (int c = 1; c < log_scores.size(); ++c) {
    if (log_scores[c] > log_scores[best] + kLogTieTolerance) best = c;
  }
  return best;
}

std::string predict(const NBModel& model, const Record& record) {
  return model.schema().response().domain[predict_code(model, record)];
}

nlohmann::ordered_json NBModel::to_json() const {
  const std::vector<std::string>& classes = schema_.response().domain;
  nlohmann::ordered_json j;
  j["alpha"] = alpha_;
  j["n_train"] = n_train_;
  j["schema"] = schema_.to_json();
  nlohmann::ordered_json priors;
  for (int c = 0; c < priors_.size(); ++c) priors[classes[c]] = priors_[c];
  j["priors"] = std::move(priors);
  nlohmann::ordered_json cpt;
  for (int v = 0; v < schema_.variable_count(); ++v) {
    if (v == schema_.response_index()) continue;
    const VariableSpec& var = schema_.variable(v);
    nlohmann::ordered_json per_class;
    for (size_t c = 0; c < classes.size(); ++c) {
      nlohmann::ordered_json per_value;
      for (int m = 0; m < var.domain_size(); ++m) {
        per_value[var.domain[m]] = cpt_[v](static_cast<int>(c), m);
      }
      per_class[classes[c]] = std::move(per_value);
    }
    cpt[var.name] = std::move(per_class);
  }
  j["cpt"] = std::move(cpt);
  nlohmann::ordered_json counts;
  for (int c = 0; c < class_counts_.size(); ++c) {
    counts[classes[c]] = class_counts_[c];
  }
  j["class_counts"] = std::move(counts);
  return j;
}

NBModel NBModel::from_json(const nlohmann::ordered_json& j) {
  try {
    Schema schema = Schema::from_json(j.at("schema"));
    const double alpha = j.at("alpha").get<double>();
    const int n_train = j.at("n_train").get<int>();
    const std::vector<std::string>& classes = schema.response().domain;
    const int class_count = static_cast<int>(classes.size());

    Eigen::ArrayXd priors(class_count);
    Eigen::VectorXi class_counts(class_count);
    for (int c = 0; c < class_count; ++c) {
      priors[c] = j.at("priors").at(classes[c]).get<double>();
      class_counts[c] = j.at("class_counts").at(classes[c]).get<int>();
    }
    std::vector<Eigen::ArrayXXd> cpt(schema.variable_count());
    for (int v = 0; v < schema.variable_count(); ++v) {
      if (v == schema.response_index()) continue;
      const VariableSpec& var = schema.variable(v);
      Eigen::ArrayXXd table(class_count, var.domain_size());
      const auto& per_class = j.at("cpt").at(var.name);
      for (int c = 0; c < class_count; ++c) {
        const auto& per_value = per_class.at(classes[c]);
        for (int m = 0; m < var.domain_size(); ++m) {
          table(c, m) = per_value.at(var.domain[m]).get<double>();
        }
      }
      cpt[v] = std::move(table);
    }
    return NBModel(std::move(schema), alpha, std::move(priors),
                   std::move(class_counts), std::move(cpt), n_train);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
}

void NBModel::save(std::ostream& out) const {
  out << to_json().dump(2) << '\n';
  if (!out) throw IoError("model: write failed");
}

NBModel NBModel::load(std::istream& in) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
  return from_json(j);
}

}  // namespace gradebayes
