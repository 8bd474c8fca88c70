#pragma once

#include <stdexcept>
#include <string>

namespace airline {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// File was readable but is not in a supported image or document format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent configuration: bad keys, bad values, mismatched sizes or ids.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

class DegenerateRegionError : public Error {
 public:
  using Error::Error;
};

/// LP_r is undefined when the ground truth covers no pixel.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// Scene generator could not place the requested segments.
class CapacityError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

}  // namespace detail
}  // namespace airline
