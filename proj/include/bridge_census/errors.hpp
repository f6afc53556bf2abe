#pragma once

#include <stdexcept>
#include <string>

namespace bridge_census {

// Malformed tuple text (bad token, out-of-range integer).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed integers that do not make up an even continued fraction.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A zero denominator appeared while evaluating a continued fraction.
class DegenerateFraction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument outside the domain of a counting formula (typically c < 3).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration safety cap was reached.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two routes that must agree did not. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bridge_census
