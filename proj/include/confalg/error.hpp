#pragma once

#include <stdexcept>
#include <string>

namespace confalg {

// Error taxonomy used across the library. All carry a plain message; the CLI
// maps ParseError to exit code 2 and PreconditionError to exit code 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ArithmeticError : Error {
  using Error::Error;
};

struct ContextError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct MembershipError : Error {
  using Error::Error;
};

struct WellDefinednessError : Error {
  using Error::Error;
};

}  // namespace confalg
