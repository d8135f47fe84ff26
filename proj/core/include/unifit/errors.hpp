#pragma once

#include <stdexcept>
#include <string>

namespace unifit {

// Invalid argument value (alpha outside (0,1), bad distribution parameters, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Too few observations for the requested operation.
class SampleSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Data outside the domain where a statistic is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An uncensored observation whose censoring survival estimate is zero.
// index() is 0-based; the message counts from 1.
class DegenerateWeightError : public std::runtime_error {
 public:
  DegenerateWeightError(std::size_t index, double time)
      : std::runtime_error("zero censoring survival at uncensored observation " +
                           std::to_string(index + 1) + " (time " + std::to_string(time) + ")"),
        index_(index),
        time_(time) {}

  std::size_t index() const noexcept { return index_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t index_;
  double time_;
};

// Data that makes a transformation undefined (e.g. min-max scaling of constant data).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Censoring target that cannot be reached for the lifetime distribution.
class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, double lowest, double highest)
      : std::runtime_error(what), lowest_(lowest), highest_(highest) {}

  double lowest() const noexcept { return lowest_; }
  double highest() const noexcept { return highest_; }

 private:
  double lowest_;
  double highest_;
};

// Method and data regime that do not go together (classical test on censored data).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace unifit
