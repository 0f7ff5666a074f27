#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcw {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// leftSubtract(a, b) with a > b, and similar partial operations.
class UndefinedOperation : public Error {
 public:
  using Error::Error;
};

/// A worm letter is below the fragment bound.
class NotInFragment : public Error {
 public:
  using Error::Error;
};

class NotVariableFree : public Error {
 public:
  using Error::Error;
};

/// Level outside the range where a theory's clause is stated.
class OutOfApplicability : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Step budget ran out, or an intermediate value left the 64-bit range.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Evaluation merge hit two different values for the same key.
class MergeConflict : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace rcw
