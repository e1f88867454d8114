#include "gradebayes/dataset.hpp"

#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gradebayes/error.hpp"
#include "gradebayes/rng.hpp"

namespace gradebayes {

Record record_from_labels(const Schema& schema,
                          const std::map<std::string, std::string>& labels) {
  Record r;
  r.codes = Eigen::VectorXi::Constant(schema.variable_count(), kMissing);
  for (const auto& [name, label] : labels) {
    const int v = schema.index_of(name);
    if (v < 0) throw ValidationError("unknown variable '" + name + "'");
    r.codes[v] = validate_value(schema.variable(v), label);
  }
  return r;
}

Dataset::Dataset(Schema schema, Eigen::MatrixXi codes)
    : schema_(std::move(schema)), codes_(std::move(codes)) {
  if (codes_.cols() != schema_.variable_count()) {
    throw ValidationError("dataset has " + std::to_string(codes_.cols()) +
                          " columns, schema expects " +
                          std::to_string(schema_.variable_count()));
  }
  for (int i = 0; i < size(); ++i) {
    for (int v = 0; v < schema_.variable_count(); ++v) {
      const int c = codes_(i, v);
      if (c < kMissing || c >= schema_.variable(v).domain_size()) {
        throw ValidationError("record " + std::to_string(i) + ", variable '" +
                              schema_.variable(v).name +
                              "': code out of range");
      }
    }
  }
}

Record Dataset::record(int index) const {
  return Record{codes_.row(index).transpose()};
}

std::string Dataset::label(int record, int variable) const {
  const int c = codes_(record, variable);
  if (c == kMissing) return std::string(kMissingToken);
  return schema_.variable(variable).domain[c];
}

namespace {

// RFC-4180-style cell splitter. Quoted cells may contain commas, doubled
// quotes and newlines; rows end at a newline outside quotes. CRLF accepted.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool cell_started = false;  // row has content beyond a bare newline
  // swallow a UTF-8 BOM
  if (in.peek() == 0xEF) {
    char bom[3];
    in.read(bom, 3);
    if (in.gcount() != 3 || bom[1] != '\xBB' || bom[2] != '\xBF') {
      throw FormatError("csv: stray bytes before the header");
    }
  }
  char ch;
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          cell += '"';
        } else {
          in_quotes = false;
        }
      } else {
        cell += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        cell_started = true;
        break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        cell_started = true;
        break;
      case '\r':
        break;  // handled by the following '\n'; stray CRs are dropped
      case '\n':
        if (cell_started || !cell.empty() || !row.empty()) {
          row.push_back(std::move(cell));
          cell.clear();
          rows.push_back(std::move(row));
          row.clear();
        }
        cell_started = false;
        break;
      default:
        cell += ch;
        cell_started = true;
        break;
    }
  }
  if (in_quotes) throw FormatError("csv: unterminated quoted cell");
  if (cell_started || !cell.empty() || !row.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool parse_percentage(const std::string& cell, double* out) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Dataset load_csv(std::istream& in, const Schema& schema,
                 const LoadOptions& options, int* skipped) {
  const auto rows = parse_csv(in);
  if (rows.empty()) throw FormatError("csv: missing header row");

  // Header must map 1:1 onto the schema, any order.
  const std::vector<std::string>& header = rows.front();
  std::vector<int> column_variable(header.size(), -1);
  std::vector<bool> covered(schema.variable_count(), false);
  for (size_t c = 0; c < header.size(); ++c) {
    const std::string name = trim(header[c]);
    const int v = schema.index_of(name);
    if (v < 0 || covered[v]) {
      std::string columns;
      for (const auto& h : header) {
        if (!columns.empty()) columns += ", ";
        columns += trim(h);
      }
      throw ValidationError(
          "csv header does not match the schema (column '" + name +
          (v < 0 ? "' is unknown" : "' repeats") + "); columns: " + columns);
    }
    covered[v] = true;
    column_variable[c] = v;
  }
  for (int v = 0; v < schema.variable_count(); ++v) {
    if (!covered[v]) {
      throw ValidationError("csv header is missing variable '" +
                            schema.variable(v).name + "'");
    }
  }

  const int n = static_cast<int>(rows.size()) - 1;
  Eigen::MatrixXi codes(n, schema.variable_count());
  int kept = 0;
  int dropped = 0;
  for (int r = 0; r < n; ++r) {
    const std::vector<std::string>& cells = rows[r + 1];
    try {
      if (cells.size() != header.size()) {
        throw ValidationError("expected " + std::to_string(header.size()) +
                              " cells, got " + std::to_string(cells.size()));
      }
      for (size_t c = 0; c < cells.size(); ++c) {
        const int v = column_variable[c];
        const VariableSpec& spec = schema.variable(v);
        const std::string cell = trim(cells[c]);
        int code;
        double pct;
        if (cell == kMissingToken) {
          code = kMissing;
        } else if (spec.has_discretizer()) {
          if (parse_percentage(cell, &pct)) {
            code = spec.code_of(discretize(pct, spec));
          } else {
            code = spec.code_of(cell);
            if (code < 0) {
              throw ValidationError("variable '" + spec.name + "': value '" +
                                    cell +
                                    "' is neither a percentage nor a domain "
                                    "label");
            }
          }
        } else {
          code = validate_value(spec, cell);
        }
        codes(kept, v) = code;
      }
      ++kept;
    } catch (const ValidationError& e) {
      if (!options.skip_invalid) {
        throw ValidationError("row " + std::to_string(r + 1) + ": " +
                              e.what());
      }
      ++dropped;
    }
  }
  if (skipped != nullptr) *skipped = dropped;
  codes.conservativeResize(kept, Eigen::NoChange);
  return Dataset(schema, std::move(codes));
}

namespace {

void write_cell(std::ostream& out, const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) {
    out << cell;
    return;
  }
  out << '"';
  for (char ch : cell) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace

void write_csv_header(const Schema& schema, std::ostream& out) {
  for (int v = 0; v < schema.variable_count(); ++v) {
    if (v > 0) out << ',';
    write_cell(out, schema.variable(v).name);
  }
}

void write_csv_row(const Dataset& data, int record, std::ostream& out) {
  for (int v = 0; v < data.schema().variable_count(); ++v) {
    if (v > 0) out << ',';
    write_cell(out, data.label(record, v));
  }
}

void write_csv(const Dataset& data, std::ostream& out) {
  write_csv_header(data.schema(), out);
  out << '\n';
  for (int i = 0; i < data.size(); ++i) {
    write_csv_row(data, i, out);
    out << '\n';
  }
}

std::vector<Dataset> split_folds(const Dataset& data, int k,
                                 std::uint64_t seed) {
  const int n = data.size();
  if (k < 2) throw ValidationError("split_folds: k must be at least 2");
  if (k > n) {
    throw ValidationError("split_folds: k=" + std::to_string(k) +
                          " exceeds the record count " + std::to_string(n));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  for (int i = n - 1; i >= 1; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }
  std::vector<Dataset> folds;
  folds.reserve(k);
  int offset = 0;
  for (int f = 0; f < k; ++f) {
    const int size = n / k + (f < n % k ? 1 : 0);
    Eigen::MatrixXi codes(size, data.schema().variable_count());
    for (int i = 0; i < size; ++i) {
      codes.row(i) = data.codes().row(order[offset + i]);
    }
    offset += size;
    folds.emplace_back(data.schema(), std::move(codes));
  }
  return folds;
}

Dataset restrict(const Dataset& data, const std::set<std::string>& keep) {
  const Schema& schema = data.schema();
  for (const std::string& name : keep) {
    const int v = schema.index_of(name);
    if (v < 0) {
      throw ValidationError("restrict: unknown variable '" + name + "'");
    }
    if (v == schema.response_index()) {
      throw ValidationError("restrict: '" + name +
                            "' is the response, not a predictor");
    }
  }
  std::vector<VariableSpec> kept_vars;
  std::vector<int> kept_cols;
  for (int v = 0; v < schema.variable_count(); ++v) {
    if (v == schema.response_index() || keep.contains(schema.variable(v).name)) {
      kept_vars.push_back(schema.variable(v));
      kept_cols.push_back(v);
    }
  }
  Eigen::MatrixXi codes(data.size(), static_cast<int>(kept_cols.size()));
  for (size_t c = 0; c < kept_cols.size(); ++c) {
    codes.col(static_cast<int>(c)) = data.codes().col(kept_cols[c]);
  }
  return Dataset(Schema(std::move(kept_vars)), std::move(codes));
}

}  // namespace gradebayes
