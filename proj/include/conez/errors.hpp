#pragma once

#include <stdexcept>
#include <string>

namespace conez {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NonFinite : Error {
  using Error::Error;
};

struct NotSymmetric : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct NotPsd : Error {
  using Error::Error;
};

struct NotSkew : Error {
  using Error::Error;
};

struct NotMember : Error {
  using Error::Error;
};

struct NotRankOne : Error {
  using Error::Error;
};

struct DegenerateDraw : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace conez
