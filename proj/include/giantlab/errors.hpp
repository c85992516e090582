#pragma once

#include <stdexcept>
#include <string>

namespace giantlab {

/// Invalid input parameters (degree, probability, sizes, shapes).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized or combinatorial construction gave up within its budget.
class GenerationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph file contents. `line()` is 1-based, 0 when not applicable.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A truncated search would exceed its configured work budget.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace giantlab
