#pragma once

#include <stdexcept>
#include <string>

namespace hyatt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates a modelling assumption (collinear vectors, rank-deficient
/// weight matrix, unsupported spectrum, ...).
class AssumptionViolation : public Error {
 public:
  using Error::Error;
};

/// A matrix that cannot be mapped to SO(3) (non-positive determinant).
class DegenerateMatrixError : public Error {
 public:
  using Error::Error;
};

/// A step function was called outside of its hybrid flow/jump set.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// File-system failure, tagged with the path involved.
class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace hyatt
