#pragma once

#include <stdexcept>
#include <string>

namespace dimerlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (graph files, CLI values).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(what + " at line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A structural invariant of a graph, forest or matching does not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation precondition (size guards, admissibility).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed (singular solve, quadrature non-convergence)
// or an internal consistency assertion tripped.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dimerlab
