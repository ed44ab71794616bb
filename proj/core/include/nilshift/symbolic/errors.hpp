#pragma once

#include <stdexcept>
#include <string>

namespace nilshift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition was violated (pole, non-divisibility, singular system).
class MathError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public MathError {
 public:
  DivisionByZero() : MathError("division by zero") {}
  explicit DivisionByZero(const std::string& what) : MathError(what) {}
};

/// Operands live in incompatible rings, root data, or modules.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A Groebner basis or kernel computation exceeded its step budget.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::string stage, long budget)
      : Error("step budget of " + std::to_string(budget) + " exhausted in " + stage),
        stage_(std::move(stage)),
        budget_(budget) {}
  const std::string& stage() const { return stage_; }
  long budget() const { return budget_; }

 private:
  std::string stage_;
  long budget_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nilshift
