#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ergo {

/// Precondition violation (bad count, negative step, mismatched shapes...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A log-based statistic received a non-positive income.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Euler-Maruyama produced a non-positive income multiplier.
class StepSizeError : public std::runtime_error {
 public:
  StepSizeError(std::size_t individual, double normal_draw, double multiplier);

  std::size_t individual() const noexcept { return individual_; }
  double normal_draw() const noexcept { return draw_; }
  double multiplier() const noexcept { return multiplier_; }

 private:
  std::size_t individual_;
  double draw_;
  double multiplier_;
};

/// Malformed input file. `line()` is 1-based; 0 when no single line is to blame.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ergo
