#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dabs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes disagree with the model they are used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Instance magnitudes would overflow exact 64-bit energy arithmetic.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance text. `line()` is 1-based; 0 means "end of input".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dabs
