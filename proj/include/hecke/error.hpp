#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: a value outside the family's domain, a bad descriptor.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A truncated object was asked for information deeper than it stores.
class PrecisionError : public Error {
public:
  using Error::Error;
};

/// Refinement or enumeration would exceed the configured level cap.
class LevelCapError : public Error {
public:
  using Error::Error;
};

/// An element of the crossed product is not in the corner p(B x G)p.
class NotInCornerError : public Error {
public:
  using Error::Error;
};

/// A covariant representation failed its construction-time self check.
class CovarianceError : public Error {
public:
  using Error::Error;
};

/// Configuration document or command line could not be interpreted.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace hecke
