#pragma once

#include <stdexcept>
#include <string>

namespace pps {

// Input violates a documented precondition (bad vertex id, n < 3, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structure is internally inconsistent (rotation traced twice, disconnected
// BFS input, partition that is not a cover, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state the construction proves cannot happen. Seeing one means a bug
// upstream, never bad user input.
class ImpossibleState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed text input or certificate schema mismatch.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pps
