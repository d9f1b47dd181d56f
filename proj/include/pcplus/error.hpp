#pragma once

#include <stdexcept>
#include <string>

namespace pcplus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula was evaluated under an interpretation that does not assign one
/// of its variables.
class UnscopedVariableError : public Error {
 public:
  using Error::Error;
};

class UndeclaredVariableError : public Error {
 public:
  using Error::Error;
};

/// Malformed variable declarations (duplicate names, empty domains, ...).
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// A labeled step was applied to a state set that does not meet its
/// precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Some initial context or transition yields no state at all.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// The two step sequences handed to a postdiction query are not related by
/// removal of observations.
class SubsequenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcplus
