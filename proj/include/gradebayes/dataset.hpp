#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gradebayes/schema.hpp"

namespace gradebayes {

/// One observation. `codes` is aligned with the schema's variable order;
/// kMissing marks an absent value.
struct Record {
  Eigen::VectorXi codes;
};

/// Builds a record from labels keyed by variable name. Variables absent
/// from the map are set missing; unknown names or labels throw.
Record record_from_labels(const Schema& schema,
                          const std::map<std::string, std::string>& labels);

/// Immutable, schema-conformant table of observations. Rows are records,
/// columns follow the schema's variable order, cells are value codes with
/// kMissing for absent values. The constructor validates every cell.
class Dataset {
 public:
  Dataset(Schema schema, Eigen::MatrixXi codes);

  const Schema& schema() const { return schema_; }
  int size() const { return static_cast<int>(codes_.rows()); }
  const Eigen::MatrixXi& codes() const { return codes_; }

  int code(int record, int variable) const { return codes_(record, variable); }
  Record record(int index) const;

  /// Domain label of a cell, or the missing token.
  std::string label(int record, int variable) const;

 private:
  Schema schema_;
  Eigen::MatrixXi codes_;
};

struct LoadOptions {
  /// Count and drop invalid rows instead of failing the whole load.
  bool skip_invalid = false;
};

/// Reads a CSV stream (UTF-8, comma-separated, double-quote escaping,
/// header row first). Header names must map 1:1 onto the schema's variable
/// names in any column order. Cells of discretizer-bearing variables that
/// parse as numbers are discretized on load; everything else is matched as
/// a domain label; `?` loads as missing. With skip_invalid, the count of
/// dropped rows lands in *skipped.
Dataset load_csv(std::istream& in, const Schema& schema,
                 const LoadOptions& options = {}, int* skipped = nullptr);

/// Writes the dataset as CSV in schema column order. load_csv(write_csv(d))
/// reproduces d exactly.
void write_csv(const Dataset& data, std::ostream& out);

/// Pieces of write_csv, no trailing newline; for callers that append
/// columns of their own.
void write_csv_header(const Schema& schema, std::ostream& out);
void write_csv_row(const Dataset& data, int record, std::ostream& out);

/// Splits records into k folds whose sizes differ by at most one.
///
/// Deterministic rule: indices 0..n-1 are shuffled by a Fisher-Yates pass
/// driven by SplitMix64(seed) (i from n-1 down to 1, j = next() % (i+1),
/// swap), then fold f takes the next (n/k + (f < n%k ? 1 : 0)) shuffled
/// indices in order.
std::vector<Dataset> split_folds(const Dataset& data, int k,
                                 std::uint64_t seed);

/// Dataset projected onto `keep` (which must name predictors only) plus the
/// response, keeping the schema's relative variable order and every record.
Dataset restrict(const Dataset& data, const std::set<std::string>& keep);

}  // namespace gradebayes
