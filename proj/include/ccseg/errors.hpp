#pragma once

#include <stdexcept>

namespace ccseg {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value or combination of values violates an operation's
/// preconditions.
struct InvalidInputError : Error {
  using Error::Error;
};

/// A configuration field is outside its documented range.
struct ConfigError : Error {
  using Error::Error;
};

/// Reading or writing a file failed, or a file could not be decoded.
struct IoError : Error {
  using Error::Error;
};

/// The exhaustive search was asked to enumerate more assignments than its
/// budget allows. It refuses rather than approximating.
struct BudgetExceededError : Error {
  using Error::Error;
};

/// A state the pipeline is supposed to make unreachable was reached.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace ccseg
