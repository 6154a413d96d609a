#pragma once

#include <stdexcept>
#include <string>

namespace meproute {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a codevector turns NaN/Inf during annealing. CLI exit code 2.
struct NumericalDivergence : Error {
  using Error::Error;
};

// Raised when an instance exceeds the brute-force enumeration bounds. CLI exit code 3.
struct OracleSizeLimit : Error {
  using Error::Error;
};

}  // namespace meproute
