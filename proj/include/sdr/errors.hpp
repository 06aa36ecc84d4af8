#pragma once

#include <stdexcept>
#include <string>

namespace sdr {

// A caller handed us input outside a documented hypothesis.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural fact guaranteed by a proof failed to hold; signals a bug.
struct InternalInvariantError : std::logic_error {
  explicit InternalInvariantError(const std::string& msg) : std::logic_error(msg) {}
};

// The exact search exceeded its node budget.
struct BudgetExceededError : std::runtime_error {
  BudgetExceededError(const std::string& msg, long long budget_)
      : std::runtime_error(msg), budget(budget_) {}
  long long budget;
};

// Malformed input document.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sdr
