#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pllid {

/// Malformed input: config files, CSV series, command-line values.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Integration diverged or a computation produced non-finite values.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The simulator hit a non-finite state; `step()` is the offending step index.
class DivergenceError : public NumericalError {
public:
  DivergenceError(std::size_t step, const std::string& what)
      : NumericalError(what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

/// A least-squares system that cannot be solved meaningfully.
class DegenerateFitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pllid
