#pragma once

#include <stdexcept>
#include <string>

namespace icr {

// Unknown or duplicate variable name.
class IdentifierError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quantity that must be nonnegative came out clearly negative.
class NumericalIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyRegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace icr
