#pragma once

#include <stdexcept>

namespace qf {

// base class for every validation / domain failure thrown by this library
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitian : Error { using Error::Error; };
struct NonPositive : Error { using Error::Error; };
struct TraceMismatch : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct FileNotFound : Error { using Error::Error; };
struct ParseFailure : Error { using Error::Error; };

}  // namespace qf
