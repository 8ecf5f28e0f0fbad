#pragma once

#include <stdexcept>
#include <string>

namespace wamark {

// Bad invocation (unknown flag combination, malformed flag value). CLI exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input data or parameters (files, dimensions, ranges). CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug, not bad input. CLI exit code 3.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wamark
