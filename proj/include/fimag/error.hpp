#pragma once

#include <stdexcept>
#include <string>

namespace fimag {

// Base of all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or violated precondition (exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search would exceed its configured budget (exit code 3).
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A verification that should hold by theory failed (exit code 1).
class CheckFailure : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw CheckFailure(what);
}

}  // namespace fimag
