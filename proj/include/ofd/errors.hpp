#pragma once

#include <stdexcept>
#include <string>

namespace ofd {

// Raised by the instance / bid-profile readers.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kDimensionMismatch };

  ParseError(Kind kind, int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

// Raised by validate_instance.
class ValidationError : public std::runtime_error {
 public:
  enum class Kind { kNegativeUtility, kNotNormalized };

  ValidationError(Kind kind, int agent, const std::string& what)
      : std::runtime_error(what), kind_(kind), agent_(agent) {}

  Kind kind() const { return kind_; }
  int agent() const { return agent_; }

 private:
  Kind kind_;
  int agent_;
};

// Raised when an exhaustive computation would exceed its configured budget.
// Exact analyses fail loudly instead of silently truncating.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ofd
