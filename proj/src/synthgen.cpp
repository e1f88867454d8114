#include "gradebayes/synthgen.hpp"

#include <cmath>

#include "gradebayes/error.hpp"
#include "gradebayes/rng.hpp"

namespace gradebayes {

namespace {

constexpr double kSumTolerance = 1e-9;

template <typename Derived>
void check_distribution(const Eigen::ArrayBase<Derived>& p,
                        const std::string& what) {
  if ((p < 0.0).any()) {
    throw ValidationError("plant spec: " + what + " has a negative entry");
  }
  if (std::abs(p.sum() - 1.0) > kSumTolerance) {
    throw ValidationError("plant spec: " + what + " does not sum to 1");
  }
}

/// Smallest index i with u < p_0 + ... + p_i; the last index as fallback.
template <typename Derived>
int inverse_cdf(const Eigen::DenseBase<Derived>& p, double u) {
  double cum = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    cum += p(i);
    if (u < cum) return i;
  }
  return static_cast<int>(p.size()) - 1;
}

}  // namespace

void PlantSpec::validate(const Schema& schema) const {
  if (n < 1) throw ValidationError("plant spec: n must be at least 1");
  if (response_marginal.size() != schema.class_count()) {
    throw ValidationError(
        "plant spec: response marginal has the wrong number of classes");
  }
  check_distribution(response_marginal, "response marginal");
  for (const auto& [name, table] : planted) {
    const int v = schema.index_of(name);
    if (v < 0 || v == schema.response_index()) {
      throw ValidationError("plant spec: '" + name +
                            "' is not a predictor of the schema");
    }
    if (table.rows() != schema.class_count() ||
        table.cols() != schema.variable(v).domain_size()) {
      throw ValidationError("plant spec: planted table for '" + name +
                            "' has the wrong shape");
    }
    for (int c = 0; c < table.rows(); ++c) {
      check_distribution(table.row(c),
                         "planted table for '" + name + "', class '" +
                             schema.response().domain[c] + "'");
    }
  }
  for (const auto& [name, rate] : missing_rates) {
    const int v = schema.index_of(name);
    if (v < 0 || v == schema.response_index()) {
      throw ValidationError("plant spec: missing rate for '" + name +
                            "', which is not a predictor of the schema");
    }
    if (!(rate >= 0.0 && rate < 1.0)) {
      throw ValidationError("plant spec: missing rate for '" + name +
                            "' must be in [0,1)");
    }
  }
}

Dataset generate(const Schema& schema, const PlantSpec& spec) {
  spec.validate(schema);
  const int vars = schema.variable_count();
  const int response = schema.response_index();

  // Variable-slot lookups hoisted out of the record loop.
  std::vector<const Eigen::ArrayXXd*> planted(vars, nullptr);
  std::vector<double> missing_rate(vars, 0.0);
  for (const auto& [name, table] : spec.planted) {
    planted[schema.index_of(name)] = &table;
  }
  for (const auto& [name, rate] : spec.missing_rates) {
    missing_rate[schema.index_of(name)] = rate;
  }

  Eigen::MatrixXi codes(spec.n, vars);
  for (int r = 0; r < spec.n; ++r) {
    SplitMix64 response_stream(substream_seed(spec.seed, r, response));
    const int cls = inverse_cdf(spec.response_marginal,
                                response_stream.next_unit());
    codes(r, response) = cls;
    for (int v = 0; v < vars; ++v) {
      if (v == response) continue;
      SplitMix64 stream(substream_seed(spec.seed, r, v));
      const double u_value = stream.next_unit();
      const double u_missing = stream.next_unit();
      const int m = schema.variable(v).domain_size();
      int value;
      if (planted[v] != nullptr) {
        value = inverse_cdf(planted[v]->row(cls), u_value);
      } else {
        value = std::min(static_cast<int>(u_value * m), m - 1);
      }
      codes(r, v) = u_missing < missing_rate[v] ? kMissing : value;
    }
  }
  return Dataset(schema, std::move(codes));
}

PlantSpec PlantSpec::from_json(const nlohmann::ordered_json& j,
                               const Schema& schema) {
  PlantSpec spec;
  try {
    spec.n = j.at("n").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    const std::vector<std::string>& classes = schema.response().domain;
    spec.response_marginal.resize(static_cast<int>(classes.size()));
    for (size_t c = 0; c < classes.size(); ++c) {
      spec.response_marginal[static_cast<int>(c)] =
          j.at("response_marginal").at(classes[c]).get<double>();
    }
    if (j.contains("planted")) {
      for (const auto& [name, per_class] : j.at("planted").items()) {
        const int v = schema.index_of(name);
        if (v < 0) {
          throw ValidationError("plant spec: '" + name +
                                "' is not a predictor of the schema");
        }
        const VariableSpec& var = schema.variable(v);
        Eigen::ArrayXXd table(static_cast<int>(classes.size()),
                              var.domain_size());
        for (size_t c = 0; c < classes.size(); ++c) {
          const auto& row = per_class.at(classes[c]);
          for (int m = 0; m < var.domain_size(); ++m) {
            table(static_cast<int>(c), m) = row.at(var.domain[m]).get<double>();
          }
        }
        spec.planted.emplace(name, std::move(table));
      }
    }
    if (j.contains("missing_rate")) {
      const auto& mr = j.at("missing_rate");
      if (mr.is_number()) {
        const double rate = mr.get<double>();
        for (int v : schema.predictor_indices()) {
          spec.missing_rates[schema.variable(v).name] = rate;
        }
      } else {
        for (const auto& [name, rate] : mr.items()) {
          spec.missing_rates[name] = rate.get<double>();
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("plant spec: ") + e.what());
  }
  spec.validate(schema);
  return spec;
}

nlohmann::ordered_json PlantSpec::to_json(const Schema& schema) const {
  const std::vector<std::string>& classes = schema.response().domain;
  nlohmann::ordered_json j;
  j["n"] = n;
  j["seed"] = seed;
  nlohmann::ordered_json marginal;
  for (size_t c = 0; c < classes.size(); ++c) {
    marginal[classes[c]] = response_marginal[static_cast<int>(c)];
  }
  j["response_marginal"] = std::move(marginal);
  nlohmann::ordered_json planted_json;
  for (const auto& [name, table] : planted) {
    const VariableSpec& var = schema.variable(schema.index_of(name));
    nlohmann::ordered_json per_class;
    for (size_t c = 0; c < classes.size(); ++c) {
      nlohmann::ordered_json row;
      for (int m = 0; m < var.domain_size(); ++m) {
        row[var.domain[m]] = table(static_cast<int>(c), m);
      }
      per_class[classes[c]] = std::move(row);
    }
    planted_json[name] = std::move(per_class);
  }
  if (!planted_json.empty()) j["planted"] = std::move(planted_json);
  if (!missing_rates.empty()) {
    nlohmann::ordered_json rates;
    for (const auto& [name, rate] : missing_rates) rates[name] = rate;
    j["missing_rate"] = std::move(rates);
  }
  return j;
}

PlantSpec default_plant_spec() {
  const Schema schema = builtin_student_schema();
  PlantSpec spec;
  spec.n = 300;
  spec.seed = 42;
  spec.response_marginal = Eigen::ArrayXd(4);
  spec.response_marginal << 0.40, 0.35, 0.15, 0.10;  // First Second Third Fail

  // Rows follow the response domain (First, Second, Third, Fail); columns
  // follow each predictor's domain order.
  Eigen::ArrayXXd gss(4, 7);  // O A B C D E F
  gss << 0.50, 0.35, 0.06, 0.04, 0.02, 0.02, 0.01,
         0.04, 0.10, 0.50, 0.25, 0.06, 0.03, 0.02,
         0.02, 0.03, 0.08, 0.15, 0.45, 0.17, 0.10,
         0.01, 0.02, 0.04, 0.09, 0.14, 0.30, 0.40;
  spec.planted.emplace("GSS", std::move(gss));

  Eigen::ArrayXXd lloc(4, 4);  // Village Town Tahseel District
  lloc << 0.10, 0.15, 0.10, 0.65,
          0.15, 0.60, 0.15, 0.10,
          0.55, 0.10, 0.25, 0.10,
          0.30, 0.10, 0.50, 0.10;
  spec.planted.emplace("LLoc", std::move(lloc));

  Eigen::ArrayXXd med(4, 3);  // Hindi English Mix
  med << 0.20, 0.65, 0.15,
         0.55, 0.20, 0.25,
         0.45, 0.15, 0.40,
         0.60, 0.10, 0.30;
  spec.planted.emplace("Med", std::move(med));

  spec.validate(schema);
  return spec;
}

}  // namespace gradebayes
