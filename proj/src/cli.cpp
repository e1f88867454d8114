#include "gradebayes/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gradebayes/dataset.hpp"
#include "gradebayes/error.hpp"
#include "gradebayes/evalreport.hpp"
#include "gradebayes/nbayes.hpp"
#include "gradebayes/schema.hpp"
#include "gradebayes/selection.hpp"
#include "gradebayes/synthgen.hpp"
#include "text_util.hpp"

namespace gradebayes {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

nlohmann::ordered_json parse_json_file(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

/// "builtin" selects the built-in student schema; anything else is a
/// schema file path.
Schema resolve_schema(const std::string& arg) {
  if (arg == "builtin") return builtin_student_schema();
  return Schema::from_json(parse_json_file(arg));
}

Dataset load_data(const std::string& path, const Schema& schema,
                  bool skip_invalid, std::ostream& err) {
  std::ifstream in = open_input(path);
  int skipped = 0;
  Dataset data = load_csv(in, schema, LoadOptions{skip_invalid}, &skipped);
  if (skipped > 0) {
    err << "skipped " << skipped << " invalid row(s) in '" << path << "'\n";
  }
  return data;
}

/// Routes a subcommand's data output to --out or stdout.
void emit(const std::string& out_path, std::ostream& out,
          const std::string& payload) {
  if (out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw IoError("cannot open '" + out_path + "' for writing");
  file << payload;
  if (!file) throw IoError("write to '" + out_path + "' failed");
}

std::string predictions_csv(const NBModel& model, const Dataset& data) {
  const std::vector<std::string>& classes = model.schema().response().domain;
  std::ostringstream result;
  write_csv_header(data.schema(), result);
  result << ",predicted";
  for (const auto& c : classes) result << ",p_" << c;
  result << '\n';
  for (int i = 0; i < data.size(); ++i) {
    const Record record = data.record(i);
    const Posterior post = posterior(model, record);
    write_csv_row(data, i, result);
    result << ',' << classes[predict_code(model, record)];
    for (int c = 0; c < post.probs.size(); ++c) {
      result << ',' << detail::fixed(post.probs[c], 6);
    }
    result << '\n';
  }
  return result.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& /*in*/,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"schema-driven naive Bayes engine for categorical student data"};
  app.name("gradebayes");
  app.require_subcommand(1);
  std::function<void()> action;

  // schema show [--builtin|--file F]
  auto* schema_cmd = app.add_subcommand("schema", "schema inspection");
  schema_cmd->require_subcommand(1);
  auto* show = schema_cmd->add_subcommand("show", "emit a schema as JSON");
  {
    auto opts = std::make_shared<std::pair<bool, std::string>>();
    auto* builtin_flag =
        show->add_flag("--builtin", opts->first, "the built-in student schema");
    show->add_option("--file", opts->second, "a schema JSON file")
        ->excludes(builtin_flag);
    show->callback([opts, &out, &action] {
      action = [opts, &out] {
        const Schema schema = opts->second.empty()
                                  ? builtin_student_schema()
                                  : Schema::from_json(parse_json_file(opts->second));
        out << schema.to_json().dump(2) << '\n';
      };
    });
  }

  // gen --spec S [--seed N] --out F
  auto* gen = app.add_subcommand("gen", "generate a synthetic cohort CSV");
  {
    struct GenOpts {
      std::string spec;
      std::string out_path;
      std::uint64_t seed = 0;
      bool seed_set = false;
    };
    auto opts = std::make_shared<GenOpts>();
    gen->add_option("--spec", opts->spec,
                    "plant spec JSON file, or 'default' for the built-in cohort")
        ->required();
    gen->add_option("--out", opts->out_path, "output CSV path (default stdout)");
    gen->add_option("--seed", opts->seed, "override the spec's seed")
        ->each([opts](const std::string&) { opts->seed_set = true; });
    gen->callback([opts, &out, &action] {
      action = [opts, &out] {
        const Schema schema = builtin_student_schema();
        PlantSpec spec = opts->spec == "default"
                             ? default_plant_spec()
                             : PlantSpec::from_json(parse_json_file(opts->spec),
                                                    schema);
        if (opts->seed_set) spec.seed = opts->seed;
        const Dataset data = generate(schema, spec);
        std::ostringstream csv;
        write_csv(data, csv);
        emit(opts->out_path, out, csv.str());
      };
    });
  }

  // train --data F --schema S --alpha A --out M
  auto* train_cmd = app.add_subcommand("train", "train a model on a CSV");
  {
    struct TrainOpts {
      std::string data, schema = "builtin", out_path;
      double alpha = 1.0;
      bool skip_invalid = false;
    };
    auto opts = std::make_shared<TrainOpts>();
    train_cmd->add_option("--data", opts->data, "training CSV")->required();
    train_cmd->add_option("--schema", opts->schema,
                          "'builtin' or a schema JSON file");
    train_cmd->add_option("--alpha", opts->alpha, "smoothing pseudocount")
        ->check(CLI::NonNegativeNumber);
    train_cmd->add_option("--out", opts->out_path,
                          "model JSON path (default stdout)");
    train_cmd->add_flag("--skip-invalid", opts->skip_invalid,
                        "drop invalid rows instead of failing");
    train_cmd->callback([opts, &out, &err, &action] {
      action = [opts, &out, &err] {
        const Schema schema = resolve_schema(opts->schema);
        const Dataset data =
            load_data(opts->data, schema, opts->skip_invalid, err);
        const NBModel model = train(data, opts->alpha);
        emit(opts->out_path, out, model.to_json().dump(2) + "\n");
      };
    });
  }

  // predict --model M --data F --out F2
  auto* predict_cmd =
      app.add_subcommand("predict", "append predictions to a CSV");
  {
    struct PredictOpts {
      std::string model, data, out_path;
      bool skip_invalid = false;
    };
    auto opts = std::make_shared<PredictOpts>();
    predict_cmd->add_option("--model", opts->model, "model JSON file")
        ->required();
    predict_cmd->add_option("--data", opts->data, "input CSV")->required();
    predict_cmd->add_option("--out", opts->out_path,
                            "output CSV path (default stdout)");
    predict_cmd->add_flag("--skip-invalid", opts->skip_invalid,
                          "drop invalid rows instead of failing");
    predict_cmd->callback([opts, &out, &err, &action] {
      action = [opts, &out, &err] {
        std::ifstream model_in = open_input(opts->model);
        const NBModel model = NBModel::load(model_in);
        const Dataset data =
            load_data(opts->data, model.schema(), opts->skip_invalid, err);
        emit(opts->out_path, out, predictions_csv(model, data));
      };
    });
  }

  // rank --data F --schema S [--threshold 0.5]
  auto* rank_cmd = app.add_subcommand("rank", "rank predictors by relevance");
  {
    struct RankOpts {
      std::string data, schema = "builtin", format = "text";
      double threshold = 0.5;
      bool skip_invalid = false;
    };
    auto opts = std::make_shared<RankOpts>();
    rank_cmd->add_option("--data", opts->data, "training CSV")->required();
    rank_cmd->add_option("--schema", opts->schema,
                         "'builtin' or a schema JSON file");
    rank_cmd->add_option("--threshold", opts->threshold,
                         "strict selection threshold");
    rank_cmd->add_option("--format", opts->format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    rank_cmd->add_flag("--skip-invalid", opts->skip_invalid,
                       "drop invalid rows instead of failing");
    rank_cmd->callback([opts, &out, &err, &action] {
      action = [opts, &out, &err] {
        const Schema schema = resolve_schema(opts->schema);
        const Dataset data =
            load_data(opts->data, schema, opts->skip_invalid, err);
        const FeatureRanking ranking = rank_features(data, opts->threshold);
        if (opts->format == "json") {
          out << to_json(ranking).dump(2) << '\n';
        } else {
          out << format_text(ranking);
        }
      };
    });
  }

  // evaluate --data F --schema S --folds K --alpha A --seed N
  auto* eval_cmd =
      app.add_subcommand("evaluate", "k-fold cross-validation report");
  {
    struct EvalOpts {
      std::string data, schema = "builtin", format = "text";
      int folds = 10;
      double alpha = 1.0;
      std::uint64_t seed = 42;
      bool skip_invalid = false;
    };
    auto opts = std::make_shared<EvalOpts>();
    eval_cmd->add_option("--data", opts->data, "CSV with responses")
        ->required();
    eval_cmd->add_option("--schema", opts->schema,
                         "'builtin' or a schema JSON file");
    eval_cmd->add_option("--folds", opts->folds, "fold count")
        ->check(CLI::Range(2, 1'000'000));
    eval_cmd->add_option("--alpha", opts->alpha, "smoothing pseudocount")
        ->check(CLI::NonNegativeNumber);
    eval_cmd->add_option("--seed", opts->seed, "fold shuffle seed");
    eval_cmd->add_option("--format", opts->format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    eval_cmd->add_flag("--skip-invalid", opts->skip_invalid,
                       "drop invalid rows instead of failing");
    eval_cmd->callback([opts, &out, &err, &action] {
      action = [opts, &out, &err] {
        const Schema schema = resolve_schema(opts->schema);
        const Dataset data =
            load_data(opts->data, schema, opts->skip_invalid, err);
        const EvalReport report =
            cross_validate(data, opts->folds, opts->alpha, opts->seed);
        if (opts->format == "json") {
          out << to_json(report).dump(2) << '\n';
        } else {
          out << format_text(report);
        }
      };
    });
  }

  // crosstab --data F --schema S --var V
  auto* crosstab_cmd =
      app.add_subcommand("crosstab", "cross-tab a predictor vs the response");
  {
    struct CrosstabOpts {
      std::string data, schema = "builtin", var, format = "text";
      bool skip_invalid = false;
    };
    auto opts = std::make_shared<CrosstabOpts>();
    crosstab_cmd->add_option("--data", opts->data, "CSV with responses")
        ->required();
    crosstab_cmd->add_option("--schema", opts->schema,
                             "'builtin' or a schema JSON file");
    crosstab_cmd->add_option("--var", opts->var, "predictor to tabulate")
        ->required();
    crosstab_cmd->add_option("--format", opts->format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    crosstab_cmd->add_flag("--skip-invalid", opts->skip_invalid,
                           "drop invalid rows instead of failing");
    crosstab_cmd->callback([opts, &out, &err, &action] {
      action = [opts, &out, &err] {
        const Schema schema = resolve_schema(opts->schema);
        const Dataset data =
            load_data(opts->data, schema, opts->skip_invalid, err);
        const ContingencyTable table = contingency(data, opts->var);
        if (opts->format == "json") {
          out << to_json(table).dump(2) << '\n';
        } else if (opts->format == "csv") {
          std::ostringstream csv;
          write_csv(table, csv);
          out << csv.str();
        } else {
          out << format_text(table);
        }
      };
    });
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gradebayes");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return static_cast<int>(ExitStatus::ok);
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return static_cast<int>(ExitStatus::ok);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::usage);
  }

  if (!action) {
    err << "usage error: no subcommand given\n";
    return static_cast<int>(ExitStatus::usage);
  }
  try {
    action();
    return static_cast<int>(ExitStatus::ok);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::usage);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::validation);
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::io);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::io);
  }
}

}  // namespace gradebayes
