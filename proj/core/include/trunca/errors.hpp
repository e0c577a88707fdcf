#pragma once

#include <stdexcept>
#include <string>

namespace trunca {

// Parameter or argument outside the mathematical domain: std::domain_error.
// Dimension / index mismatches: std::invalid_argument.

/// Operation not available for the given model or order.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical procedure could not produce a meaningful value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampler gave up, e.g. a rejection loop exceeded its budget.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model or generator specification.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace trunca
