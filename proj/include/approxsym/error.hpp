#pragma once

#include <stdexcept>
#include <string>

namespace approxsym {

// Sizes of two operands disagree (graph vs permutation, two permutations, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value is outside the documented domain of an operation.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input (graph files, permutation files, matrices, configs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace approxsym
