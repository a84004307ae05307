#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace swapshop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t needed, std::uint64_t budget)
      : Error("enumeration budget exceeded: need " + std::to_string(needed) +
              " subsets, budget " + std::to_string(budget)),
        needed_(needed) {}
  std::uint64_t needed() const noexcept { return needed_; }

 private:
  std::uint64_t needed_;
};

}  // namespace swapshop
