#pragma once

#include <stdexcept>
#include <string>

namespace voa {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a requested mode lands above the cutoff
struct TruncationOverflow : Error {
  TruncationOverflow() : Error("truncation overflow") {}
};

struct PreconditionError : Error {
  using Error::Error;
};

struct InputError : Error {
  using Error::Error;
};

}  // namespace voa
