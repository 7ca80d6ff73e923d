#pragma once

#include <stdexcept>
#include <string>

namespace fedq {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad text, bad file, mismatched dimensions or truncations.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (division by zero, a form that
/// is not closed, a non-central element, ...).
class MathError : public Error {
 public:
  using Error::Error;
};

/// Something that the algorithms guarantee cannot happen did happen.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fedq
