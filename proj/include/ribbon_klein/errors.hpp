#pragma once

#include <stdexcept>
#include <string>

namespace rk {

// Runtime numerics gave up: singular pivot, non-converged fixed point,
// trace with a non-negligible imaginary part.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config-file syntax or invariant violation. line == 0 means the failure is
// not tied to a single input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace rk
