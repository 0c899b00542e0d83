#pragma once

#include <stdexcept>
#include <string>

namespace ctxbounds {

/// Malformed or out-of-range input (bad file, bad dimensions, invalid
/// constructor arguments). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A solver could not produce a certified answer. CLI exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ctxbounds
