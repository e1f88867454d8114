#include "gradebayes/selection.hpp"

#include <algorithm>

#include <Eigen/Core>

#include "gradebayes/error.hpp"
#include "text_util.hpp"

namespace gradebayes {

double feature_score(const Dataset& data, const std::string& variable) {
  if (data.size() == 0) {
    throw ValidationError("feature_score: dataset is empty");
  }
  const Schema& schema = data.schema();
  const int v = schema.index_of(variable);
  if (v < 0) {
    throw ValidationError("feature_score: unknown variable '" + variable +
                          "'");
  }
  if (v == schema.response_index()) {
    throw ValidationError("feature_score: '" + variable +
                          "' is the response, not a predictor");
  }
  const int response = schema.response_index();
  const int classes = schema.class_count();
  const int m = schema.variable(v).domain_size();

  Eigen::ArrayXXd counts = Eigen::ArrayXXd::Zero(classes, m);
  for (int i = 0; i < data.size(); ++i) {
    const int value = data.code(i, v);
    const int cls = data.code(i, response);
    if (value == kMissing || cls == kMissing) continue;
    counts(cls, value) += 1.0;
  }
  const double total = counts.sum();
  if (total == 0.0) return 0.0;
  return counts.colwise().maxCoeff().sum() / total;
}

FeatureRanking rank_features(const Dataset& data, double threshold) {
  FeatureRanking ranking;
  ranking.threshold = threshold;
  for (int v : data.schema().predictor_indices()) {
    const std::string& name = data.schema().variable(v).name;
    const double score = feature_score(data, name);
    ranking.scores.emplace_back(name, score);
    if (score > threshold) ranking.selected.insert(name);
  }
  std::sort(ranking.scores.begin(), ranking.scores.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return ranking;
}

std::string format_text(const FeatureRanking& ranking) {
  size_t width = 8;  // "variable"
  for (const auto& [name, score] : ranking.scores) {
    width = std::max(width, name.size());
  }
  std::string out = detail::pad("variable", width + 2) + "score\n";
  for (const auto& [name, score] : ranking.scores) {
    out += detail::pad(name, width + 2) + detail::fixed(score, 4) + "\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const FeatureRanking& ranking) {
  nlohmann::ordered_json j;
  j["threshold"] = ranking.threshold;
  nlohmann::ordered_json scores = nlohmann::ordered_json::array();
  for (const auto& [name, score] : ranking.scores) {
    scores.push_back({{"variable", name}, {"score", score}});
  }
  j["scores"] = std::move(scores);
  j["selected"] = std::vector<std::string>(ranking.selected.begin(),
                                           ranking.selected.end());
  return j;
}

}  // namespace gradebayes
