#pragma once

#include <stdexcept>
#include <string>

namespace fuzzydecide {

/// Input data violates a documented invariant (bad rating, broken matrix,
/// malformed row). The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written. CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Embedded resource failed its integrity check.
class CorruptResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fuzzydecide
