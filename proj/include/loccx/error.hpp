#pragma once

#include <stdexcept>
#include <string>

namespace loccx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together (non-square amplitudes, padding too small).
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Input that is not a valid state (negative weights, bad normalization).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Scalar argument outside its admissible interval.
class RangeError : public Error {
public:
  using Error::Error;
};

/// Oracle work exceeding the configured budget.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// File that cannot be read or written.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace loccx
