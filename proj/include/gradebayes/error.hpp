#pragma once

#include <stdexcept>

namespace gradebayes {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad data content: domain violations, schema mismatches, degenerate
/// inputs. Maps to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// API or command-line misuse. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Failure to open, read or write a stream. Maps to exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Structurally malformed input (broken JSON, unbalanced CSV quotes,
/// truncated model files). Maps to exit code 3.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace gradebayes
