#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gradebayes/dataset.hpp"

namespace gradebayes {

/// Per-predictor relevance scores with threshold selection.
struct FeatureRanking {
  /// (predictor, score) sorted by descending score, then ascending name.
  std::vector<std::pair<std::string, double>> scores;
  double threshold = 0.5;
  /// Predictors whose score is strictly greater than the threshold.
  std::set<std::string> selected;
};

/// Relevance of one predictor: the resubstitution accuracy of the
/// single-predictor naive Bayes classifier (alpha=0) trained and scored on
/// `data`, which reduces to sum_v max_c count(class=c, var=v) / N over the
/// records where the variable and the response are both present. A
/// predictor with no usable records scores 0.
double feature_score(const Dataset& data, const std::string& variable);

/// Scores every predictor and applies strict `score > threshold` selection.
FeatureRanking rank_features(const Dataset& data, double threshold = 0.5);

/// Two-column table (name, score to 4 decimals), highest score first.
std::string format_text(const FeatureRanking& ranking);

nlohmann::ordered_json to_json(const FeatureRanking& ranking);

}  // namespace gradebayes
