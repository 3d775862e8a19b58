#pragma once

#include <stdexcept>
#include <string>

namespace qfric {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of a function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// epsilon(omega) + 1 vanishes: lossless surface-plasmon pole hit exactly.
class SingularResponse : public Error {
public:
  using Error::Error;
};

/// 1 - B * Delta vanishes for a lossless configuration.
class PoleOnRealAxis : public Error {
public:
  using Error::Error;
};

/// The operation requires an ohmic (dissipative Drude) surface.
class NotOhmicError : public Error {
public:
  using Error::Error;
};

/// A spectral invariant that the physics guarantees was violated.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// Invalid configuration; `field` carries the dotted path of the offending key.
class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace qfric
