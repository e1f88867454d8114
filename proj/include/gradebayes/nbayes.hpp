#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "gradebayes/dataset.hpp"
#include "gradebayes/schema.hpp"

namespace gradebayes {

/// Trained classifier state: class priors plus one conditional probability
/// table per predictor. Immutable; safe for unrestricted concurrent reads.
///
/// A CPT is a (class count x domain size) array whose rows sum to 1. The
/// response's slot in `cpt` stays empty.
class NBModel {
 public:
  NBModel(Schema schema, double alpha, Eigen::ArrayXd priors,
          Eigen::VectorXi class_counts, std::vector<Eigen::ArrayXXd> cpt,
          int n_train);

  const Schema& schema() const { return schema_; }
  double alpha() const { return alpha_; }
  int n_train() const { return n_train_; }

  /// Class priors in response-domain order; sums to 1.
  const Eigen::ArrayXd& priors() const { return priors_; }
  const Eigen::VectorXi& class_counts() const { return class_counts_; }

  const Eigen::ArrayXXd& cpt(int variable) const { return cpt_[variable]; }
  double cpt(int variable, int cls, int value) const {
    return cpt_[variable](cls, value);
  }

  /// Cached logs of priors/CPTs, recomputed deterministically from the
  /// stored probabilities (also after load).
  const Eigen::ArrayXd& log_priors() const { return log_priors_; }
  const Eigen::ArrayXXd& log_cpt(int variable) const {
    return log_cpt_[variable];
  }

  nlohmann::ordered_json to_json() const;
  static NBModel from_json(const nlohmann::ordered_json& j);

  /// save/load round-trip reproduces every probability exactly. Saving the
  /// same model twice yields byte-identical output.
  void save(std::ostream& out) const;
  static NBModel load(std::istream& in);

 private:
  Schema schema_;
  double alpha_;
  Eigen::ArrayXd priors_;
  Eigen::VectorXi class_counts_;
  std::vector<Eigen::ArrayXXd> cpt_;
  int n_train_;
  Eigen::ArrayXd log_priors_;
  std::vector<Eigen::ArrayXXd> log_cpt_;
};

/// Estimates priors and CPTs from `data`:
///
///   priors(c)      = count(c) / N
///   cpt(V, c, v)   = (count(V=v, c) + alpha)
///                    / (count(c, V non-missing) + alpha * |domain(V)|)
///
/// Records with V missing are excluded from V's counts only; they still
/// count toward priors and every other variable. When alpha is 0 and a
/// (predictor, class) pair has no observations at all, its CPT row is the
/// uniform distribution so rows always normalize.
NBModel train(const Dataset& data, double alpha = 1.0);

struct Posterior {
  /// Normalized class probabilities in response-domain order.
  Eigen::ArrayXd probs;
  /// Non-missing predictors that contributed factors, in schema order.
  std::vector<std::string> used_variables;
};

/// Class distribution for one record: prior times the CPT factor of every
/// non-missing predictor, normalized. Missing predictors contribute no
/// factor. Accumulated in log space; normalization subtracts the max before
/// exponentiating. The record's response value, if any, is ignored. Throws
/// ValidationError when every class scores zero (possible at alpha=0).
Posterior posterior(const NBModel& model, const Record& record);

/// Index of the most probable class; ties go to the class appearing first
/// in the response domain. Classes whose log scores sit within 1e-12 of the
/// leader count as tied, so scores that only differ by accumulated rounding
/// cannot steer the choice.
int predict_code(const NBModel& model, const Record& record);

/// Label of the most probable class.
std::string predict(const NBModel& model, const Record& record);

}  // namespace gradebayes
