#pragma once

#include <stdexcept>
#include <string>

namespace fewocc {

/// Raised when an operation's precondition does not hold (bad parameters,
/// malformed input, occurrence cap exceeded, materialization cap hit).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails. Seeing one is a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fewocc
