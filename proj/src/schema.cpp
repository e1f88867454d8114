#include "gradebayes/schema.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "gradebayes/error.hpp"

namespace gradebayes {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int VariableSpec::code_of(std::string_view label) const {
  for (int i = 0; i < domain_size(); ++i) {
    if (domain[i] == label) return i;
  }
  return -1;
}

namespace {

void check_variable(const VariableSpec& v) {
  if (v.name.empty()) throw ValidationError("variable with empty name");
  if (v.domain.size() < 2) {
    throw ValidationError("variable '" + v.name +
                          "': domain needs at least two labels");
  }
  std::set<std::string> seen;
  for (const auto& label : v.domain) {
    if (label.empty()) {
      throw ValidationError("variable '" + v.name + "': empty domain label");
    }
    if (!seen.insert(label).second) {
      throw ValidationError("variable '" + v.name +
                            "': duplicate domain label '" + label + "'");
    }
  }
  if (v.bands.empty()) return;
  if (v.bands.front().min != 0.0) {
    throw ValidationError("variable '" + v.name +
                          "': bands must start at 0 to cover [0,100]");
  }
  for (size_t i = 0; i < v.bands.size(); ++i) {
    const Band& b = v.bands[i];
    if (b.min < 0.0 || b.min > 100.0) {
      throw ValidationError("variable '" + v.name +
                            "': band bound outside [0,100]");
    }
    if (i > 0 && !(v.bands[i - 1].min < b.min)) {
      throw ValidationError("variable '" + v.name +
                            "': band bounds must be strictly ascending");
    }
    if (v.code_of(b.label) < 0) {
      throw ValidationError("variable '" + v.name + "': band label '" +
                            b.label + "' is not in the domain");
    }
  }
}

}  // namespace

Schema::Schema(std::vector<VariableSpec> variables)
    : variables_(std::move(variables)) {
  std::set<std::string> names;
  for (int i = 0; i < variable_count(); ++i) {
    const VariableSpec& v = variables_[i];
    check_variable(v);
    if (!names.insert(v.name).second) {
      throw ValidationError("duplicate variable name '" + v.name + "'");
    }
    if (v.role == Role::response) {
      if (response_index_ >= 0) {
        throw ValidationError("schema has more than one response variable");
      }
      response_index_ = i;
    }
  }
  if (response_index_ < 0) {
    throw ValidationError("schema has no response variable");
  }
}

int Schema::index_of(std::string_view name) const {
  for (int i = 0; i < variable_count(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return -1;
}

std::vector<int> Schema::predictor_indices() const {
  std::vector<int> out;
  out.reserve(predictor_count());
  for (int i = 0; i < variable_count(); ++i) {
    if (i != response_index_) out.push_back(i);
  }
  return out;
}

nlohmann::ordered_json Schema::to_json() const {
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (const VariableSpec& v : variables_) {
    nlohmann::ordered_json jv;
    jv["name"] = v.name;
    jv["role"] = v.role == Role::response ? "response" : "predictor";
    jv["domain"] = v.domain;
    if (v.has_discretizer()) {
      nlohmann::ordered_json bands = nlohmann::ordered_json::array();
      for (const Band& b : v.bands) {
        bands.push_back({{"min", b.min}, {"label", b.label}});
      }
      jv["bands"] = std::move(bands);
    }
    vars.push_back(std::move(jv));
  }
  nlohmann::ordered_json j;
  j["variables"] = std::move(vars);
  return j;
}

Schema Schema::from_json(const nlohmann::ordered_json& j) {
  std::vector<VariableSpec> vars;
  try {
    for (const auto& jv : j.at("variables")) {
      VariableSpec v;
      v.name = jv.at("name").get<std::string>();
      const auto role = jv.at("role").get<std::string>();
      if (role == "response") {
        v.role = Role::response;
      } else if (role == "predictor") {
        v.role = Role::predictor;
      } else {
        throw FormatError("schema: unknown role '" + role + "'");
      }
      v.domain = jv.at("domain").get<std::vector<std::string>>();
      if (jv.contains("bands")) {
        for (const auto& jb : jv.at("bands")) {
          v.bands.push_back(Band{jb.at("min").get<double>(),
                                 jb.at("label").get<std::string>()});
        }
      }
      vars.push_back(std::move(v));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("schema: ") + e.what());
  }
  return Schema(std::move(vars));
}

Schema builtin_student_schema() {
  auto cat = [](std::string name, std::vector<std::string> domain) {
    return VariableSpec{std::move(name), Role::predictor, std::move(domain), {}};
  };
  std::vector<VariableSpec> vars;
  vars.push_back(cat("Sex", {"Male", "Female"}));
  vars.push_back(cat("Cat", {"General", "OBC", "SC", "ST"}));
  vars.push_back(cat("Med", {"Hindi", "English", "Mix"}));
  vars.push_back(cat("SFH", {"veg", "non-veg"}));
  vars.push_back(cat("SOH", {"drinking", "smoking", "both", "not-applicable"}));
  vars.push_back(cat("LLoc", {"Village", "Town", "Tahseel", "District"}));
  vars.push_back(cat("Hos", {"Yes", "No"}));
  vars.push_back(cat("FSize", {"1", "2", "3", ">3"}));
  vars.push_back(cat("FStat", {"Joint", "Individual"}));
  vars.push_back(cat("FAIn", {"BPL", "poor", "medium", "high"}));
  vars.push_back(VariableSpec{
      "GSS",
      Role::predictor,
      {"O", "A", "B", "C", "D", "E", "F"},
      {{0.0, "F"},
       {40.0, "E"},
       {50.0, "D"},
       {60.0, "C"},
       {70.0, "B"},
       {80.0, "A"},
       {90.0, "O"}}});
  vars.push_back(cat("TColl", {"Female", "Co-education"}));
  const std::vector<std::string> quals = {
      "no-education", "elementary",  "secondary",     "graduate",
      "post-graduate", "doctorate",  "not-applicable"};
  vars.push_back(cat("FQual", quals));
  vars.push_back(cat("MQual", quals));
  vars.push_back(cat("FOcc", {"Service", "retired", "not-applicable"}));
  vars.push_back(cat("MOcc", {"House-wife", "Service", "retired",
                              "not-applicable"}));
  vars.push_back(VariableSpec{
      "GObt",
      Role::response,
      {"First", "Second", "Third", "Fail"},
      {{0.0, "Fail"}, {36.0, "Third"}, {45.0, "Second"}, {60.0, "First"}}});
  return Schema(std::move(vars));
}

std::string discretize(double pct, const VariableSpec& spec) {
  if (!spec.has_discretizer()) {
    throw UsageError("variable '" + spec.name + "' has no discretizer");
  }
  if (!(pct >= 0.0 && pct <= 100.0)) {
    std::ostringstream msg;
    msg << "variable '" << spec.name << "': percentage " << pct
        << " outside [0,100]";
    throw ValidationError(msg.str());
  }
  // Last band whose lower bound is <= pct; bounds are strictly ascending.
  size_t hit = 0;
  for (size_t i = 0; i < spec.bands.size(); ++i) {
    if (spec.bands[i].min <= pct) hit = i;
  }
  return spec.bands[hit].label;
}

int validate_value(const VariableSpec& spec, std::string_view raw) {
  const std::string value = trim(raw);
  if (value == kMissingToken) return kMissing;
  const int code = spec.code_of(value);
  if (code >= 0) return code;
  std::string allowed;
  for (const auto& label : spec.domain) {
    if (!allowed.empty()) allowed += ", ";
    allowed += label;
  }
  throw ValidationError("variable '" + spec.name + "': value '" + value +
                        "' is not in the domain {" + allowed + "}");
}

}  // namespace gradebayes
