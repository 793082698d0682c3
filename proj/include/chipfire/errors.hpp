#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chipfire {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition (CLI exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A simulation or sweep ran past its configured budget (CLI exit code 3).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t rounds)
      : Error(what), rounds_(rounds) {}

  std::uint64_t rounds() const { return rounds_; }

 private:
  std::uint64_t rounds_;
};

/// An internal contradiction that would refute a proven claim (CLI exit code 1).
class Falsification : public Error {
 public:
  using Error::Error;
};

}  // namespace chipfire
