#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdnls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula or transform spec; offset is a 0-based character index.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Numeric evaluation hit a pole or produced a non-finite value.
class EvaluationError : public Error {
public:
  enum class Kind { Pole, Overflow };
  EvaluationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// A point or interval lies outside where an object is defined.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Invalid parameters or configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// The time integrator produced non-finite samples.
class InstabilityError : public Error {
public:
  using Error::Error;
};

} // namespace tdnls
