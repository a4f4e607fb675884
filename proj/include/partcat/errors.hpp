#pragma once

#include <stdexcept>
#include <string>

namespace partcat {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// structural mismatches
struct ArityMismatch : Error { using Error::Error; };
struct WordMismatch : Error { using Error::Error; };
struct BoundMismatch : Error { using Error::Error; };
struct EmptyRow : Error { using Error::Error; };

// domain violations
struct NotEven : Error { using Error::Error; };
struct OutOfBound : Error { using Error::Error; };
struct BoundTooSmall : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// resource guards
struct CapExceeded : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

// lookup and input failures
struct UnknownName : Error { using Error::Error; };
struct UnsupportedGroup : Error { using Error::Error; };
struct UnsupportedModel : Error { using Error::Error; };
struct EmptyBasis : Error { using Error::Error; };

struct ParseError : Error {
  size_t position;
  ParseError(const std::string& what, size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace partcat
