#pragma once

#include <stdexcept>
#include <string>

namespace waf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Null-model fitting failures (non-convergence, separation).
struct FitError : Error {
  using Error::Error;
};

struct RankDeficiencyError : FitError {
  using FitError::FitError;
};

// Data that cannot support a permutation test (constant residuals,
// every genotype column degenerate, ...).
struct DegenerateInputError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& file, long line, const std::string& message)
      : Error(file + ": line " + std::to_string(line) + ": " + message),
        line_number(line) {}
  explicit ParseError(const std::string& message) : Error(message), line_number(0) {}
  long line_number;
};

}  // namespace waf
