#pragma once

#include <stdexcept>
#include <string>

namespace wreath {

/// Operands live in different (or incompatible) groups.
class GroupMismatch : public std::invalid_argument {
 public:
  explicit GroupMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionViolated : public std::invalid_argument {
 public:
  explicit PreconditionViolated(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration or search ran past its configured resource cap.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Machine-integer coordinates overflowed. Raised instead of wrapping.
class ArithmeticOverflow : public std::overflow_error {
 public:
  explicit ArithmeticOverflow(const std::string& what) : std::overflow_error(what) {}
};

}  // namespace wreath
