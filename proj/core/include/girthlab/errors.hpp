#pragma once

#include <stdexcept>
#include <string>

namespace girthlab {

// Invalid inputs: out-of-range parameters, malformed graphs or files,
// violated operation preconditions. The CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input (edge lists, config files). Carries the offending line
// number in the message. A parse failure is a precondition failure, so this
// inherits the exit-code-2 mapping.
class ParseError : public PreconditionError {
 public:
  explicit ParseError(const std::string& what) : PreconditionError(what) {}
};

// Numerical degeneracy: a probability distribution collapsed in a way that
// leaves the recurrence undefined (edge-degree mass at one, zero-mass update
// denominator). The CLI maps this to exit code 3.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace girthlab
